#include "qp/modular.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>

namespace qp {

uint64_t Zp::pow(uint64_t a, uint64_t e) const
{
    uint64_t r = 1;
    a %= p_;
    while (e) {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t Zp::inv(uint64_t a) const
{
    if (a % p_ == 0)
        throw BadPoint("inverse of zero residue");
    return pow(a, p_ - 2);
}

uint64_t Zp::of_rational(const Rational& c) const
{
    Int num = numerator(c) % p_;
    if (num < 0)
        num += p_;
    Int den = denominator(c) % p_;
    uint64_t d = den.convert_to<uint64_t>();
    if (d == 0)
        throw BadPoint("rational has denominator divisible by prime");
    return mul(num.convert_to<uint64_t>(), inv(d));
}

uint64_t Zp::of_int(int64_t v) const
{
    int64_t m = v % static_cast<int64_t>(p_);
    if (m < 0)
        m += static_cast<int64_t>(p_);
    return static_cast<uint64_t>(m);
}

uint64_t Rng::next()
{
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

uint64_t Rng::uniform(uint64_t lo, uint64_t hi)
{
    return lo + next() % (hi - lo + 1);
}

ModularPoint ModularPoint::sample(int nsymbols, uint64_t prime, uint64_t seed)
{
    ModularPoint pt;
    pt.prime = prime;
    pt.seed = seed;
    Rng rng(seed);
    pt.assignment.resize(static_cast<size_t>(nsymbols));
    for (auto& v : pt.assignment)
        v = rng.uniform(1, prime - 1);
    return pt;
}

uint64_t eval_mod(const MPoly& p, const ModularPoint& pt)
{
    Zp zp(pt.prime);
    uint64_t acc = 0;
    for (auto& [e, c] : p.terms()) {
        uint64_t v = zp.of_rational(c);
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i])
                v = zp.mul(v, zp.pow(pt.assignment[i], e[i]));
        acc = zp.add(acc, v);
    }
    return acc;
}

uint64_t eval_mod(const RatFn& r, const ModularPoint& pt)
{
    Zp zp(pt.prime);
    uint64_t d = eval_mod(r.den(), pt);
    if (d == 0)
        throw BadPoint("denominator vanishes at evaluation point");
    return zp.mul(eval_mod(r.num(), pt), zp.inv(d));
}

bool equal_modular(const RatFn& a, const RatFn& b, int trials, uint64_t prime, uint64_t seed,
                   double* bound_out)
{
    int nsym = std::max(a.arity(), b.arity());
    auto diff_deg = a.degree_bound() + b.degree_bound();
    if (bound_out)
        *bound_out = std::pow(static_cast<double>(diff_deg) / static_cast<double>(prime),
                              trials);
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        bool done = false;
        for (int attempt = 0; attempt < 32 && !done; ++attempt) {
            auto pt = ModularPoint::sample(nsym, prime, rng.next());
            try {
                Zp zp(prime);
                if (eval_mod(a, pt) != eval_mod(b, pt))
                    return false;
                done = true;
            } catch (const BadPoint&) {
            }
        }
        if (!done)
            throw BadPoint("no admissible point for modular comparison");
    }
    return true;
}

// ---------------------------------------------------------------------------
// JetSpace / Jet
// ---------------------------------------------------------------------------

JetSpace::JetSpace(int nvars, int order, uint64_t prime)
    : nvars_(nvars), order_(order), zp_(prime)
{
    // enumerate monomials of total degree <= order, graded order
    std::vector<uint8_t> cur(static_cast<size_t>(nvars), 0);
    std::map<std::vector<uint8_t>, int> idx;
    std::vector<std::vector<uint8_t>> by_degree;
    // simple recursive enumeration
    std::vector<std::vector<uint8_t>> all;
    std::vector<uint8_t> e(static_cast<size_t>(nvars), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == nvars) {
            all.push_back(e);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            e[static_cast<size_t>(pos)] = static_cast<uint8_t>(k);
            self(self, pos + 1, remaining - k);
        }
        e[static_cast<size_t>(pos)] = 0;
    };
    rec(rec, 0, order);
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        int da = 0, db = 0;
        for (auto x : a)
            da += x;
        for (auto x : b)
            db += x;
        if (da != db)
            return da < db;
        return a < b;
    });
    monos_ = std::move(all);
    for (size_t i = 0; i < monos_.size(); ++i)
        idx[monos_[i]] = static_cast<int>(i);
    mul_table_.assign(monos_.size() * monos_.size(), -1);
    std::vector<uint8_t> s(static_cast<size_t>(nvars));
    for (size_t a = 0; a < monos_.size(); ++a) {
        for (size_t b = 0; b < monos_.size(); ++b) {
            int deg = 0;
            for (int v = 0; v < nvars; ++v) {
                s[static_cast<size_t>(v)] =
                    static_cast<uint8_t>(monos_[a][static_cast<size_t>(v)] + monos_[b][static_cast<size_t>(v)]);
                deg += s[static_cast<size_t>(v)];
            }
            if (deg <= order)
                mul_table_[a * monos_.size() + b] = idx.at(s);
        }
    }
    diff_table_.assign(static_cast<size_t>(nvars) * monos_.size(), {-1, 0});
    for (int v = 0; v < nvars; ++v) {
        for (size_t i = 0; i < monos_.size(); ++i) {
            uint8_t k = monos_[i][static_cast<size_t>(v)];
            if (k == 0)
                continue;
            auto lower = monos_[i];
            lower[static_cast<size_t>(v)] -= 1;
            diff_table_[static_cast<size_t>(v) * monos_.size() + i] = {idx.at(lower), k};
        }
    }
}

int JetSpace::var_index(int v) const
{
    std::vector<uint8_t> e(static_cast<size_t>(nvars_), 0);
    e[static_cast<size_t>(v)] = 1;
    for (size_t i = 0; i < monos_.size(); ++i)
        if (monos_[i] == e)
            return static_cast<int>(i);
    throw std::logic_error("jet variable outside space");
}

Jet Jet::constant(const JetSpace* sp, uint64_t v)
{
    Jet j(sp);
    j.c_[0] = v % sp->field().prime();
    return j;
}

Jet Jet::coordinate(const JetSpace* sp, int var, uint64_t base_value)
{
    Jet j = constant(sp, base_value);
    j.c_[static_cast<size_t>(sp->var_index(var))] = 1;
    return j;
}

bool Jet::is_zero() const
{
    if (acc_ < 0)
        throw JetAccuracyExhausted();
    const int n = sp_->size();
    for (int i = 0; i < n; ++i) {
        int deg = 0;
        for (auto e : sp_->mono(i))
            deg += e;
        if (deg > acc_)
            continue; // slot beyond the trusted order
        if (c_[static_cast<size_t>(i)])
            return false;
    }
    return true;
}

Jet Jet::operator-() const
{
    Jet r(sp_);
    r.acc_ = acc_;
    const auto& f = sp_->field();
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = f.sub(0, c_[i]);
    return r;
}

Jet Jet::operator+(const Jet& o) const
{
    assert(sp_ == o.sp_);
    Jet r(sp_);
    r.acc_ = std::min(acc_, o.acc_);
    const auto& f = sp_->field();
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = f.add(c_[i], o.c_[i]);
    return r;
}

Jet Jet::operator-(const Jet& o) const
{
    assert(sp_ == o.sp_);
    Jet r(sp_);
    r.acc_ = std::min(acc_, o.acc_);
    const auto& f = sp_->field();
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[i] = f.sub(c_[i], o.c_[i]);
    return r;
}

Jet Jet::operator*(const Jet& o) const
{
    assert(sp_ == o.sp_);
    Jet r(sp_);
    r.acc_ = std::min(acc_, o.acc_);
    const auto& f = sp_->field();
    const size_t n = c_.size();
    for (size_t a = 0; a < n; ++a) {
        if (!c_[a])
            continue;
        for (size_t b = 0; b < n; ++b) {
            if (!o.c_[b])
                continue;
            int t = sp_->mul_index(static_cast<int>(a), static_cast<int>(b));
            if (t >= 0)
                r.c_[static_cast<size_t>(t)] = f.add(r.c_[static_cast<size_t>(t)], f.mul(c_[a], o.c_[b]));
        }
    }
    return r;
}

Jet Jet::mul_scalar(const Rational& r) const
{
    Jet out(sp_);
    out.acc_ = acc_;
    const auto& f = sp_->field();
    uint64_t s = f.of_rational(r);
    for (size_t i = 0; i < c_.size(); ++i)
        out.c_[i] = f.mul(c_[i], s);
    return out;
}

Jet Jet::inv() const
{
    const auto& f = sp_->field();
    if (c_[0] == 0)
        throw BadPoint("jet constant slot vanishes under inversion");
    uint64_t b0 = f.inv(c_[0]);
    // e = a*b0 - 1 has no constant slot; inverse = b0 * sum (-e)^m
    Jet e = mul_scalar(Rational(1));
    for (size_t i = 0; i < e.c_.size(); ++i)
        e.c_[i] = f.mul(e.c_[i], b0);
    e.c_[0] = f.sub(e.c_[0], 1);
    Jet acc = Jet::constant(sp_, 1);
    Jet pw = Jet::constant(sp_, 1);
    for (int m = 1; m <= sp_->order(); ++m) {
        pw = pw * e;
        if (m % 2 == 1) {
            acc = acc - pw;
        } else {
            acc = acc + pw;
        }
    }
    for (size_t i = 0; i < acc.c_.size(); ++i)
        acc.c_[i] = f.mul(acc.c_[i], b0);
    acc.acc_ = acc_;
    return acc;
}

Jet Jet::derivative(int var) const
{
    Jet r(sp_);
    r.acc_ = acc_ - 1;
    const auto& f = sp_->field();
    const int n = sp_->size();
    for (int i = 0; i < n; ++i) {
        if (!c_[static_cast<size_t>(i)])
            continue;
        auto [j, mult] = sp_->diff_index(var, i);
        if (j >= 0)
            r.c_[static_cast<size_t>(j)] =
                f.add(r.c_[static_cast<size_t>(j)], f.mul(c_[static_cast<size_t>(i)], static_cast<uint64_t>(mult)));
    }
    return r;
}

Jet eval_jet(const MPoly& p, const JetSpace& sp, const ModularPoint& pt,
             const std::vector<int>& coord_var)
{
    const auto& f = sp.field();
    Jet acc(&sp);
    for (auto& [e, c] : p.terms()) {
        Jet term = Jet::constant(&sp, f.of_rational(c));
        for (size_t i = 0; i < e.size(); ++i) {
            if (!e[i])
                continue;
            if (coord_var[i] >= 0) {
                Jet x = Jet::coordinate(&sp, coord_var[i], pt.assignment[i]);
                for (uint32_t k = 0; k < e[i]; ++k)
                    term = term * x;
            } else {
                term = term.mul_scalar(Rational(1)); // no-op keeps type
                Jet s = Jet::constant(&sp, f.pow(pt.assignment[i], e[i]));
                term = term * s;
            }
        }
        acc = acc + term;
    }
    return acc;
}

} // namespace qp
