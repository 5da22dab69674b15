#include "qp/mpoly.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qp {

Rational rational_from_string(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

uint64_t total_degree(const ExpVec& e)
{
    uint64_t d = 0;
    for (auto x : e)
        d += x;
    return d;
}

bool GrlexLess::operator()(const ExpVec& a, const ExpVec& b) const
{
    uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da < db;
    // lex, symbol 0 most significant, higher exponent = larger
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i] < b[i];
    return false;
}

MPoly MPoly::constant(int arity, Rational c)
{
    MPoly p(arity);
    if (c != 0)
        p.terms_.emplace(ExpVec(static_cast<size_t>(arity), 0), std::move(c));
    return p;
}

MPoly MPoly::symbol(int arity, int sym, uint32_t exp)
{
    MPoly p(arity);
    ExpVec e(static_cast<size_t>(arity), 0);
    e.at(static_cast<size_t>(sym)) = exp;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

bool MPoly::is_constant() const
{
    if (terms_.empty())
        return true;
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0;
}

bool MPoly::is_one() const
{
    return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0 &&
           terms_.begin()->second == 1;
}

Rational MPoly::constant_term() const
{
    auto it = terms_.find(ExpVec(static_cast<size_t>(arity_), 0));
    return it == terms_.end() ? Rational(0) : it->second;
}

int64_t MPoly::degree() const
{
    if (terms_.empty())
        return -1;
    return static_cast<int64_t>(total_degree(terms_.rbegin()->first));
}

int64_t MPoly::degree_in(int sym) const
{
    int64_t d = 0;
    for (auto& [e, c] : terms_)
        d = std::max<int64_t>(d, e[static_cast<size_t>(sym)]);
    return d;
}

void MPoly::add_term(const ExpVec& e, const Rational& c)
{
    if (c == 0)
        return;
    assert(static_cast<int>(e.size()) == arity_);
    auto [it, fresh] = terms_.emplace(e, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

MPoly MPoly::operator-() const
{
    MPoly r(arity_);
    for (auto& [e, c] : terms_)
        r.terms_.emplace(e, -c);
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o)
{
    assert(arity_ == o.arity_);
    for (auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o)
{
    assert(arity_ == o.arity_);
    for (auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

MPoly MPoly::operator+(const MPoly& o) const
{
    MPoly r = *this;
    r += o;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const
{
    MPoly r = *this;
    r -= o;
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const
{
    assert(arity_ == o.arity_);
    MPoly r(arity_);
    if (terms_.empty() || o.terms_.empty())
        return r;
    ExpVec e(static_cast<size_t>(arity_));
    for (auto& [ea, ca] : terms_) {
        for (auto& [eb, cb] : o.terms_) {
            for (size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

MPoly MPoly::mul_scalar(const Rational& c) const
{
    MPoly r(arity_);
    if (c == 0)
        return r;
    for (auto& [e, cf] : terms_)
        r.terms_.emplace(e, cf * c);
    return r;
}

MPoly MPoly::derivative(int sym) const
{
    MPoly r(arity_);
    auto s = static_cast<size_t>(sym);
    for (auto& [e, c] : terms_) {
        if (e[s] == 0)
            continue;
        ExpVec d = e;
        d[s] -= 1;
        r.add_term(d, c * static_cast<long>(e[s]));
    }
    return r;
}

const std::pair<const ExpVec, Rational>& MPoly::leading() const
{
    if (terms_.empty())
        throw std::logic_error("leading term of zero polynomial");
    return *terms_.rbegin();
}

Rational MPoly::content_signed() const
{
    if (terms_.empty())
        return Rational(1);
    Int num_gcd = 0, den_lcm = 1;
    for (auto& [e, c] : terms_) {
        num_gcd = gcd(num_gcd, numerator(c));
        den_lcm = lcm(den_lcm, denominator(c));
    }
    Rational content(num_gcd, den_lcm);
    if (leading().second < 0)
        content = -content;
    return content;
}

std::optional<MPoly> MPoly::divide_exact(const MPoly& divisor) const
{
    assert(arity_ == divisor.arity_);
    if (divisor.is_zero())
        return std::nullopt;
    MPoly rem = *this;
    MPoly quot(arity_);
    const auto& [lde, ldc] = divisor.leading();
    ExpVec qe(static_cast<size_t>(arity_));
    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.leading();
        for (size_t i = 0; i < qe.size(); ++i) {
            if (re[i] < lde[i])
                return std::nullopt;
            qe[i] = re[i] - lde[i];
        }
        Rational qc = rc / ldc;
        quot.add_term(qe, qc);
        MPoly t(arity_);
        t.terms_.emplace(qe, qc);
        rem -= t * divisor;
    }
    return quot;
}

MPoly MPoly::substitute(int sym, const MPoly& value) const
{
    assert(value.arity() == arity_);
    MPoly r(arity_);
    auto s = static_cast<size_t>(sym);
    for (auto& [e, c] : terms_) {
        MPoly t(arity_);
        ExpVec base = e;
        uint32_t k = base[s];
        base[s] = 0;
        t.terms_.emplace(base, c);
        for (uint32_t i = 0; i < k; ++i)
            t = t * value;
        r += t;
    }
    return r;
}

MPoly MPoly::remap(int new_arity, const std::vector<int>& old_to_new) const
{
    MPoly r(new_arity);
    ExpVec e(static_cast<size_t>(new_arity));
    for (auto& [oe, c] : terms_) {
        std::fill(e.begin(), e.end(), 0u);
        for (size_t i = 0; i < oe.size(); ++i) {
            if (oe[i] == 0)
                continue;
            int ni = old_to_new[i];
            if (ni < 0)
                throw std::logic_error("remap drops a used symbol");
            e[static_cast<size_t>(ni)] += oe[i];
        }
        r.add_term(e, c);
    }
    return r;
}

std::string MPoly::str(const std::function<std::string(int)>& sym_name) const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        Rational a = abs(c);
        bool has_sym = total_degree(e) > 0;
        if (a != 1 || !has_sym)
            os << to_string(a) << (has_sym ? "*" : "");
        bool first_sym = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            if (!first_sym)
                os << "*";
            first_sym = false;
            os << sym_name(static_cast<int>(i));
            if (e[i] > 1)
                os << "^" << e[i];
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// gcd machinery
// ---------------------------------------------------------------------------

namespace {

// 61-bit Mersenne prime; used only for the internal coprimality certificate.
constexpr uint64_t kCertPrime = 2305843009213693951ULL;

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p)
{
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p)
{
    uint64_t r = 1;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t rat_mod(const Rational& c, uint64_t p)
{
    Int num = numerator(c) % p;
    if (num < 0)
        num += p;
    Int den = denominator(c) % p;
    uint64_t n = num.convert_to<uint64_t>();
    uint64_t d = den.convert_to<uint64_t>();
    if (d == 0)
        throw std::overflow_error("denominator vanishes mod certificate prime");
    return mulmod(n, powmod(d, p - 2, p), p);
}

// Univariate image in `sym` of p at a random point (other symbols evaluated),
// as dense coefficient vector mod kCertPrime. Also reports whether the leading
// coefficient in `sym` survived.
std::vector<uint64_t> univariate_image(const MPoly& p, int sym,
                                       const std::vector<uint64_t>& point, bool& lc_ok)
{
    int64_t d = p.degree_in(sym);
    std::vector<uint64_t> img(static_cast<size_t>(d + 1), 0);
    for (auto& [e, c] : p.terms()) {
        uint64_t v = rat_mod(c, kCertPrime);
        for (size_t i = 0; i < e.size(); ++i) {
            if (static_cast<int>(i) == sym || e[i] == 0)
                continue;
            v = mulmod(v, powmod(point[i], e[i], kCertPrime), kCertPrime);
        }
        size_t k = e[static_cast<size_t>(sym)];
        img[k] = (img[k] + v) % kCertPrime;
    }
    // highest-degree slot nonzero <=> leading coefficient survived
    lc_ok = d >= 0 && img.back() != 0;
    while (!img.empty() && img.back() == 0)
        img.pop_back();
    return img;
}

size_t univ_gcd_degree(std::vector<uint64_t> a, std::vector<uint64_t> b)
{
    auto deg = [](const std::vector<uint64_t>& v) { return v.size(); };
    while (!b.empty()) {
        // a mod b
        uint64_t inv = powmod(b.back(), kCertPrime - 2, kCertPrime);
        while (deg(a) >= deg(b)) {
            uint64_t q = mulmod(a.back(), inv, kCertPrime);
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                uint64_t sub = mulmod(q, b[i], kCertPrime);
                uint64_t& slot = a[i + shift];
                slot = (slot + kCertPrime - sub) % kCertPrime;
            }
            while (!a.empty() && a.back() == 0)
                a.pop_back();
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// Sound fast path: certifies gcd(a,b) is constant. If the leading coefficient
// of `a` in x survives the evaluation and the image gcd has degree 0, any
// common divisor has degree 0 in x.
bool certify_coprime(const MPoly& a, const MPoly& b)
{
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<uint64_t> dist(1, kCertPrime - 1);
    int arity = a.arity();
    for (int attempt = 0; attempt < 2; ++attempt) {
        bool all_vars_ok = true;
        std::vector<uint64_t> point(static_cast<size_t>(arity));
        for (auto& v : point)
            v = dist(rng);
        for (int s = 0; s < arity; ++s) {
            if (a.degree_in(s) == 0 && b.degree_in(s) == 0)
                continue;
            bool lc_a = false, lc_b = false;
            std::vector<uint64_t> ia, ib;
            try {
                ia = univariate_image(a, s, point, lc_a);
                ib = univariate_image(b, s, point, lc_b);
            } catch (const std::overflow_error&) {
                all_vars_ok = false;
                break;
            }
            if (!(lc_a || lc_b)) {
                all_vars_ok = false;
                break;
            }
            if (univ_gcd_degree(ia, ib) != 0) {
                all_vars_ok = false;
                break;
            }
        }
        if (all_vars_ok)
            return true;
    }
    return false;
}

// Recursive view: polynomial in main variable `sym` with MPoly coefficients.
std::vector<MPoly> to_recursive(const MPoly& p, int sym)
{
    std::vector<MPoly> coef(static_cast<size_t>(p.degree_in(sym) + 1), MPoly(p.arity()));
    for (auto& [e, c] : p.terms()) {
        ExpVec base = e;
        uint32_t k = base[static_cast<size_t>(sym)];
        base[static_cast<size_t>(sym)] = 0;
        coef[k].add_term(base, c);
    }
    return coef;
}

MPoly from_recursive(const std::vector<MPoly>& coef, int sym, int arity)
{
    MPoly r(arity);
    for (size_t k = 0; k < coef.size(); ++k) {
        if (coef[k].is_zero())
            continue;
        MPoly xs = MPoly::symbol(arity, sym, static_cast<uint32_t>(k));
        r += coef[k] * xs;
    }
    return r;
}

MPoly rec_content(const std::vector<MPoly>& coef);

// Pseudo-remainder of a by b in the main variable (both recursive).
std::vector<MPoly> pseudo_rem(std::vector<MPoly> a, const std::vector<MPoly>& b)
{
    auto norm = [](std::vector<MPoly>& v) {
        while (!v.empty() && v.back().is_zero())
            v.pop_back();
    };
    norm(a);
    const MPoly& lb = b.back();
    while (a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        MPoly la = a.back();
        for (auto& c : a)
            c = c * lb;
        for (size_t i = 0; i < b.size(); ++i)
            a[i + shift] -= b[i] * la;
        norm(a);
        if (a.empty())
            break;
    }
    return a;
}

MPoly gcd_impl(const MPoly& a, const MPoly& b);

MPoly rec_content(const std::vector<MPoly>& coef)
{
    MPoly g(coef.empty() ? 0 : coef.front().arity());
    for (auto& c : coef) {
        if (c.is_zero())
            continue;
        g = g.is_zero() ? c : gcd_impl(g, c);
        if (g.is_one())
            break;
    }
    return g;
}

// Primitive PRS gcd with content recursion; correct, adequate at desk scale.
MPoly gcd_impl(const MPoly& a, const MPoly& b)
{
    if (a.is_zero())
        return b.mul_scalar(Rational(1) / b.content_signed());
    if (b.is_zero())
        return a.mul_scalar(Rational(1) / a.content_signed());

    MPoly pa = a.mul_scalar(Rational(1) / a.content_signed());
    MPoly pb = b.mul_scalar(Rational(1) / b.content_signed());
    if (pa == pb)
        return pa;
    if (pa.is_constant() || pb.is_constant())
        return MPoly::constant(a.arity(), Rational(1));

    // divides fast paths: common in our fractions (power-of-factor denominators)
    if (pb.divide_exact(pa))
        return pa;
    if (pa.divide_exact(pb))
        return pb;

    if (certify_coprime(pa, pb))
        return MPoly::constant(a.arity(), Rational(1));

    // pick the main variable with smallest positive joint degree
    int sym = -1;
    int64_t best = -1;
    for (int s = 0; s < a.arity(); ++s) {
        int64_t da = pa.degree_in(s), db = pb.degree_in(s);
        if (da > 0 && db > 0) {
            int64_t m = std::max(da, db);
            if (sym < 0 || m < best) {
                sym = s;
                best = m;
            }
        }
    }
    if (sym < 0)
        return MPoly::constant(a.arity(), Rational(1));

    auto ra = to_recursive(pa, sym);
    auto rb = to_recursive(pb, sym);
    MPoly ca = rec_content(ra), cb = rec_content(rb);
    MPoly cont_gcd = gcd_impl(ca, cb);
    auto divide_all = [](std::vector<MPoly>& v, const MPoly& d) {
        for (auto& c : v) {
            auto q = c.divide_exact(d);
            if (!q)
                throw std::logic_error("content division failed");
            c = *q;
        }
    };
    divide_all(ra, ca);
    divide_all(rb, cb);

    if (ra.size() < rb.size())
        std::swap(ra, rb);
    while (true) {
        auto rem = pseudo_rem(ra, rb);
        if (rem.empty())
            break;
        if (rem.size() == 1) {
            // gcd is the content part only
            return cont_gcd;
        }
        MPoly c = rec_content(rem);
        divide_all(rem, c);
        ra = std::move(rb);
        rb = std::move(rem);
    }
    MPoly prim = from_recursive(rb, sym, a.arity());
    MPoly g = prim * cont_gcd;
    return g.mul_scalar(Rational(1) / g.content_signed());
}

} // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b)
{
    assert(a.arity() == b.arity());
    return gcd_impl(a, b);
}

} // namespace qp
