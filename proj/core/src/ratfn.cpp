#include "qp/ratfn.hpp"

#include <algorithm>

namespace qp {

int mpoly_compare(const MPoly& a, const MPoly& b)
{
    auto ia = a.terms().begin(), ib = b.terms().begin();
    GrlexLess less;
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (less(ia->first, ib->first))
            return -1;
        if (less(ib->first, ia->first))
            return 1;
        if (ia->second != ib->second)
            return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.terms().end())
        return 1;
    if (ib != b.terms().end())
        return -1;
    return 0;
}

namespace {
// full-gcd reduction is worth attempting only on small operands; the
// factored arithmetic below keeps everything else reduced
constexpr size_t kGcdTermBudget = 5000;
} // namespace

RatFn::RatFn(MPoly num, MPoly den) : num_(std::move(num))
{
    if (den.is_zero())
        throw DivisionByZero();
    if (num_.is_zero())
        return;
    if (!den.is_constant() && num_.term_count() * den.term_count() <= kGcdTermBudget) {
        MPoly g = mpoly_gcd(num_, den);
        if (!g.is_one()) {
            num_ = *num_.divide_exact(g);
            den = *den.divide_exact(g);
        }
    }
    Rational c = den.content_signed();
    if (c != 1) {
        den = den.mul_scalar(Rational(1) / c);
        num_ = num_.mul_scalar(Rational(1) / c);
    }
    if (!den.is_one())
        push_factor(den, 1);
    cancel();
}

void RatFn::push_factor(const MPoly& f, int exp)
{
    if (exp == 0 || f.is_one())
        return;
    auto it = std::lower_bound(den_.begin(), den_.end(), f,
                               [](const auto& p, const MPoly& v) { return mpoly_compare(p.first, v) < 0; });
    if (it != den_.end() && mpoly_compare(it->first, f) == 0)
        it->second += exp;
    else
        den_.insert(it, {f, exp});
}

void RatFn::cancel()
{
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        while (it->second > 0) {
            auto q = num_.divide_exact(it->first);
            if (!q)
                break;
            num_ = std::move(*q);
            --it->second;
        }
        it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
}

MPoly RatFn::den() const
{
    MPoly d = MPoly::constant(num_.arity(), 1);
    for (auto& [f, e] : den_)
        for (int i = 0; i < e; ++i)
            d = d * f;
    return d;
}

RatFn RatFn::operator-() const
{
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFn RatFn::operator+(const RatFn& o) const
{
    if (is_zero())
        return o;
    if (o.is_zero())
        return *this;
    // lcm of the factored denominators
    RatFn r;
    r.num_ = MPoly(num_.arity());
    MPoly scale_a = MPoly::constant(num_.arity(), 1);
    MPoly scale_b = scale_a;
    size_t ia = 0, ib = 0;
    while (ia < den_.size() || ib < o.den_.size()) {
        int cmp = ia == den_.size() ? 1 : ib == o.den_.size() ? -1
                  : mpoly_compare(den_[ia].first, o.den_[ib].first);
        if (cmp < 0) {
            r.push_factor(den_[ia].first, den_[ia].second);
            for (int k = 0; k < den_[ia].second; ++k)
                scale_b = scale_b * den_[ia].first;
            ++ia;
        } else if (cmp > 0) {
            r.push_factor(o.den_[ib].first, o.den_[ib].second);
            for (int k = 0; k < o.den_[ib].second; ++k)
                scale_a = scale_a * o.den_[ib].first;
            ++ib;
        } else {
            int e = std::max(den_[ia].second, o.den_[ib].second);
            r.push_factor(den_[ia].first, e);
            for (int k = den_[ia].second; k < e; ++k)
                scale_a = scale_a * den_[ia].first;
            for (int k = o.den_[ib].second; k < e; ++k)
                scale_b = scale_b * o.den_[ib].first;
            ++ia;
            ++ib;
        }
    }
    r.num_ = num_ * scale_a + o.num_ * scale_b;
    r.cancel();
    return r;
}

RatFn RatFn::operator-(const RatFn& o) const { return *this + (-o); }

RatFn RatFn::operator*(const RatFn& o) const
{
    RatFn r;
    r.num_ = num_ * o.num_;
    if (r.num_.is_zero())
        return r;
    r.den_ = den_;
    for (auto& [f, e] : o.den_)
        r.push_factor(f, e);
    r.cancel();
    return r;
}

RatFn RatFn::inv() const
{
    if (num_.is_zero())
        throw DivisionByZero();
    RatFn r;
    r.num_ = den();
    Rational c = num_.content_signed();
    MPoly prim = num_;
    if (c != 1) {
        prim = prim.mul_scalar(Rational(1) / c);
        r.num_ = r.num_.mul_scalar(Rational(1) / c);
    }
    if (!prim.is_one())
        r.push_factor(prim, 1);
    r.cancel();
    return r;
}

RatFn RatFn::operator/(const RatFn& o) const { return *this * o.inv(); }

RatFn RatFn::mul_scalar(const Rational& c) const
{
    RatFn r;
    r.num_ = num_.mul_scalar(c);
    if (!r.num_.is_zero())
        r.den_ = den_;
    return r;
}

RatFn RatFn::derivative(int sym) const
{
    // (n / prod f_i^{e_i})' = [n' F - n * sum e_i f_i' F/f_i] / (F * prod f_i^{e_i})
    // with F = prod f_i (single multiplicity)
    if (den_.empty()) {
        RatFn r;
        r.num_ = num_.derivative(sym);
        return r;
    }
    MPoly F = MPoly::constant(num_.arity(), 1);
    for (auto& [f, e] : den_)
        F = F * f;
    MPoly top = num_.derivative(sym) * F;
    for (auto& [f, e] : den_) {
        MPoly df = f.derivative(sym);
        if (df.is_zero())
            continue;
        auto cof = F.divide_exact(f);
        top -= (num_ * df * *cof).mul_scalar(Rational(e));
    }
    RatFn r;
    r.num_ = std::move(top);
    if (!r.num_.is_zero()) {
        r.den_ = den_;
        for (auto& [f, e] : den_)
            r.push_factor(f, 1);
        r.cancel();
    }
    return r;
}

bool RatFn::operator==(const RatFn& o) const
{
    if (num_.is_zero())
        return o.num_.is_zero();
    if (o.num_.is_zero())
        return false;
    if (num_ == o.num_) {
        // same factored denominator?
        if (den_.size() == o.den_.size()) {
            bool same = true;
            for (size_t i = 0; i < den_.size(); ++i)
                if (den_[i].second != o.den_[i].second ||
                    mpoly_compare(den_[i].first, o.den_[i].first) != 0) {
                    same = false;
                    break;
                }
            if (same)
                return true;
        }
    }
    return num_ * o.den() == o.num_ * den();
}

int64_t RatFn::degree_bound() const
{
    int64_t d = std::max<int64_t>(0, num_.degree());
    for (auto& [f, e] : den_)
        d += e * std::max<int64_t>(0, f.degree());
    return d;
}

} // namespace qp
