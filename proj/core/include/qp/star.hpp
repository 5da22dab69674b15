#pragma once

#include "qp/modular.hpp"
#include "qp/ratfn.hpp"
#include "qp/symbol.hpp"

#include <stdexcept>
#include <vector>

namespace qp {

struct AlgebraMismatch : std::logic_error {
    AlgebraMismatch() : std::logic_error("operands belong to different algebras or orders") {}
};
struct NotInvertible : std::runtime_error {
    explicit NotInvertible(const std::string& w) : std::runtime_error(w) {}
};
struct BadIndex : std::out_of_range {
    explicit BadIndex(const std::string& w) : std::out_of_range(w) {}
};
/// Raised when an internal consistency assumption fails (engine bug, not input).
struct ModelError : std::logic_error {
    explicit ModelError(const std::string& w) : std::logic_error(w) {}
};

/// The data the star product needs: truncation order, the constant
/// antisymmetric pairing on coordinates ([x_a, x_b] = hbar * theta[a][b]),
/// and the coordinate/central split of the symbol registry.
struct StarModel {
    int order = 3; // K: elements carry hbar^0..hbar^K
    int nsymbols = 0;
    std::vector<std::vector<Rational>> theta;
    std::vector<int> coord_of_symbol; // symbol -> coordinate position, -1 for centrals
    std::vector<int> symbol_of_coord;

    int ncoords() const { return static_cast<int>(symbol_of_coord.size()); }
};

/// hbar-graded element: sum_k hbar^k c_k with commutative coefficients c_k.
/// `exact` is cleared whenever a nonzero term was dropped at truncation (or
/// could not be ruled out); checks that claim exactness assert it.
template <class C>
struct StarElem {
    const StarModel* model = nullptr;
    std::vector<C> c;
    bool exact = true;
    int64_t deg_bound = 0;

    bool compatible(const StarElem& o) const { return model == o.model; }
};

/// Backend for exact symbolic coefficients.
struct ExactCtx {
    using Coef = RatFn;
    const StarModel* model;

    RatFn zero() const { return RatFn(MPoly(model->nsymbols)); }
    RatFn from_rational(const Rational& r) const { return RatFn::constant(model->nsymbols, r); }
    RatFn symbol(int sym) const { return RatFn::symbol(model->nsymbols, sym); }
    RatFn deriv_coord(const RatFn& v, int pos) const
    {
        return v.derivative(model->symbol_of_coord[static_cast<size_t>(pos)]);
    }
    RatFn inv(const RatFn& v) const
    {
        if (v.is_zero())
            throw NotInvertible("hbar^0 coefficient is zero");
        return v.inv();
    }
    static bool is_zero(const RatFn& v) { return v.is_zero(); }
    static bool is_polynomial(const RatFn& v) { return v.is_polynomial(); }
    static constexpr bool tracks_exactness = true;
};

/// Backend for modular jet coefficients at a sampled point.
struct JetCtx {
    using Coef = Jet;
    const StarModel* model;
    const JetSpace* space;
    const ModularPoint* point;

    Jet zero() const { return Jet(space); }
    Jet from_rational(const Rational& r) const
    {
        return Jet::constant(space, space->field().of_rational(r));
    }
    Jet symbol(int sym) const
    {
        int pos = model->coord_of_symbol[static_cast<size_t>(sym)];
        uint64_t v = point->assignment[static_cast<size_t>(sym)];
        if (pos >= 0)
            return Jet::coordinate(space, pos, v);
        return Jet::constant(space, v);
    }
    Jet deriv_coord(const Jet& v, int pos) const { return v.derivative(pos); }
    Jet inv(const Jet& v) const { return v.inv(); }
    static bool is_zero(const Jet& v) { return v.is_zero(); }
    static bool is_polynomial(const Jet&) { return false; } // unknowable pointwise
    static constexpr bool tracks_exactness = false;
};

template <class Ctx>
using CoefOf = typename Ctx::Coef;

template <class Ctx>
StarElem<CoefOf<Ctx>> star_zero(const Ctx& ctx)
{
    StarElem<CoefOf<Ctx>> e;
    e.model = ctx.model;
    e.c.assign(static_cast<size_t>(ctx.model->order) + 1, ctx.zero());
    return e;
}

template <class Ctx>
StarElem<CoefOf<Ctx>> star_scalar(const Ctx& ctx, const Rational& r)
{
    auto e = star_zero(ctx);
    e.c[0] = ctx.from_rational(r);
    return e;
}

template <class Ctx>
StarElem<CoefOf<Ctx>> star_symbol(const Ctx& ctx, int sym)
{
    auto e = star_zero(ctx);
    e.c[0] = ctx.symbol(sym);
    e.deg_bound = 1;
    return e;
}

/// The grading parameter itself (grade-1 unit).
template <class Ctx>
StarElem<CoefOf<Ctx>> star_hbar(const Ctx& ctx)
{
    auto e = star_zero(ctx);
    if (ctx.model->order < 1)
        e.exact = false;
    else
        e.c[1] = ctx.from_rational(Rational(1));
    return e;
}

template <class Ctx>
StarElem<CoefOf<Ctx>> star_add(const Ctx& ctx, const StarElem<CoefOf<Ctx>>& a,
                               const StarElem<CoefOf<Ctx>>& b)
{
    if (!a.compatible(b))
        throw AlgebraMismatch();
    auto r = star_zero(ctx);
    for (size_t k = 0; k < r.c.size(); ++k)
        r.c[k] = a.c[k] + b.c[k];
    r.exact = a.exact && b.exact;
    r.deg_bound = std::max(a.deg_bound, b.deg_bound);
    return r;
}

template <class Ctx>
StarElem<CoefOf<Ctx>> star_neg(const Ctx& ctx, const StarElem<CoefOf<Ctx>>& a)
{
    auto r = a;
    for (auto& ck : r.c)
        ck = -ck;
    (void)ctx;
    return r;
}

template <class Ctx>
StarElem<CoefOf<Ctx>> star_sub(const Ctx& ctx, const StarElem<CoefOf<Ctx>>& a,
                               const StarElem<CoefOf<Ctx>>& b)
{
    return star_add(ctx, a, star_neg(ctx, b));
}

template <class Ctx>
StarElem<CoefOf<Ctx>> star_scale(const Ctx& ctx, const StarElem<CoefOf<Ctx>>& a, const Rational& r)
{
    auto out = a;
    (void)ctx;
    for (auto& ck : out.c)
        ck = ck.mul_scalar(r);
    return out;
}

/// Symmetric-ordering star product: sum_m (hbar/2)^m/m! Pi^m(a,b), where Pi
/// is the biderivation induced by the pairing. Terminates on the polynomial
/// sector; truncated (and flagged) otherwise.
template <class Ctx>
StarElem<CoefOf<Ctx>> star_mul(const Ctx& ctx, const StarElem<CoefOf<Ctx>>& a,
                               const StarElem<CoefOf<Ctx>>& b)
{
    using C = CoefOf<Ctx>;
    if (!a.compatible(b))
        throw AlgebraMismatch();
    const StarModel& M = *ctx.model;
    const int K = M.order;
    auto r = star_zero(ctx);
    r.exact = a.exact && b.exact;
    r.deg_bound = a.deg_bound + b.deg_bound;

    // nonzero pairing slots
    std::vector<std::tuple<int, int, Rational>> pairs;
    for (int p = 0; p < M.ncoords(); ++p)
        for (int q = 0; q < M.ncoords(); ++q)
            if (M.theta[static_cast<size_t>(p)][static_cast<size_t>(q)] != 0)
                pairs.emplace_back(p, q, M.theta[static_cast<size_t>(p)][static_cast<size_t>(q)]);

    for (int i = 0; i <= K; ++i) {
        if (Ctx::is_zero(a.c[static_cast<size_t>(i)]))
            continue;
        for (int j = 0; j <= K; ++j) {
            if (Ctx::is_zero(b.c[static_cast<size_t>(j)]))
                continue;
            std::vector<std::pair<C, C>> tensor;
            tensor.emplace_back(a.c[static_cast<size_t>(i)], b.c[static_cast<size_t>(j)]);
            Rational fact(1);
            for (int m = 0;; ++m) {
                if (m > 0)
                    fact *= Rational(1, 2 * m); // accumulates 1/(2^m m!)
                int grade = i + j + m;
                if (grade > K) {
                    // tensor still alive past the truncation: content dropped
                    r.exact = false;
                    break;
                }
                C sum = ctx.zero();
                for (auto& [u, v] : tensor)
                    sum = sum + u * v;
                if (!Ctx::is_zero(sum))
                    r.c[static_cast<size_t>(grade)] = r.c[static_cast<size_t>(grade)] + sum.mul_scalar(fact);
                // jets cannot certify exactness, so never look past the truncation
                if (!Ctx::tracks_exactness && grade + 1 > K) {
                    r.exact = false;
                    break;
                }
                // differentiate the tensor once more through the pairing
                std::vector<std::pair<C, C>> next;
                for (auto& [u, v] : tensor) {
                    for (auto& [p, q, w] : pairs) {
                        C du = ctx.deriv_coord(u, p);
                        if (Ctx::is_zero(du))
                            continue;
                        C dv = ctx.deriv_coord(v, q);
                        if (Ctx::is_zero(dv))
                            continue;
                        next.emplace_back(du.mul_scalar(w), dv);
                    }
                }
                if (next.empty())
                    break; // series terminated: product exact at this pair
                tensor = std::move(next);
            }
        }
    }
    if (!a.exact || !b.exact)
        r.exact = false;
    return r;
}

template <class Ctx>
StarElem<CoefOf<Ctx>> star_commutator(const Ctx& ctx, const StarElem<CoefOf<Ctx>>& a,
                                      const StarElem<CoefOf<Ctx>>& b)
{
    return star_sub(ctx, star_mul(ctx, a, b), star_mul(ctx, b, a));
}

/// Two-sided inverse modulo hbar^(K+1), solved order by order.
template <class Ctx>
StarElem<CoefOf<Ctx>> star_inv(const Ctx& ctx, const StarElem<CoefOf<Ctx>>& a)
{
    using C = CoefOf<Ctx>;
    const StarModel& M = *ctx.model;
    const int K = M.order;
    if (Ctx::is_zero(a.c[0]))
        throw NotInvertible("hbar^0 part vanishes");
    auto b = star_zero(ctx);
    b.deg_bound = a.deg_bound * (K + 1) + 1;
    b.exact = false; // rational sector in general; re-established by callers' checks
    C inv0 = ctx.inv(a.c[0]);
    b.c[0] = inv0;
    for (int k = 1; k <= K; ++k) {
        // (a*b)_k = 0 with the j=k term separated: a0*b_k = -rest
        auto partial = b;
        partial.c[static_cast<size_t>(k)] = ctx.zero();
        auto prod = star_mul(ctx, a, partial);
        b.c[static_cast<size_t>(k)] = -(prod.c[static_cast<size_t>(k)] * inv0);
    }
    // single-coordinate and central denominators invert exactly
    auto check = star_mul(ctx, a, b);
    bool clean = true;
    for (int k = 1; k <= K; ++k)
        if (!Ctx::is_zero(check.c[static_cast<size_t>(k)]))
            clean = false;
    b.exact = a.exact && clean && check.exact;
    return b;
}

/// Coefficient-wise formal partial derivative in the coordinate `sym`; a
/// derivation of the star product because the pairing is constant.
template <class Ctx>
StarElem<CoefOf<Ctx>> star_partial(const Ctx& ctx, int sym, const StarElem<CoefOf<Ctx>>& a)
{
    const StarModel& M = *ctx.model;
    if (sym < 0 || sym >= M.nsymbols || M.coord_of_symbol[static_cast<size_t>(sym)] < 0)
        throw BadIndex("partial derivative index is not a coordinate");
    auto r = a;
    int pos = M.coord_of_symbol[static_cast<size_t>(sym)];
    for (auto& ck : r.c)
        ck = ctx.deriv_coord(ck, pos);
    return r;
}

/// Divide by hbar^n (grade shift); the low grades must vanish.
template <class Ctx>
StarElem<CoefOf<Ctx>> star_div_hbar(const Ctx& ctx, const StarElem<CoefOf<Ctx>>& a, int n = 1)
{
    for (int k = 0; k < n; ++k)
        if (!Ctx::is_zero(a.c[static_cast<size_t>(k)]))
            throw ModelError("element is not divisible by hbar^" + std::to_string(n));
    auto r = star_zero(ctx);
    const int K = ctx.model->order;
    for (int k = n; k <= K; ++k)
        r.c[static_cast<size_t>(k - n)] = a.c[static_cast<size_t>(k)];
    // the top n grades are unknown after the shift unless a was exact
    r.exact = a.exact;
    r.deg_bound = a.deg_bound;
    return r;
}

template <class Ctx>
bool star_is_zero(const Ctx&, const StarElem<CoefOf<Ctx>>& a)
{
    for (auto& ck : a.c)
        if (!Ctx::is_zero(ck))
            return false;
    return true;
}

/// hbar = 0 slice: true when the grade-0 part vanishes.
template <class Ctx>
bool star_is_zero_classical(const Ctx&, const StarElem<CoefOf<Ctx>>& a)
{
    return Ctx::is_zero(a.c[0]);
}

} // namespace qp
