#pragma once

#include "qp/check.hpp"
#include "qp/discrete.hpp"

namespace qp {

struct EpsOrderExhausted : std::logic_error {
    EpsOrderExhausted()
        : std::logic_error("requested eps coefficient beyond the tracked order; raise eps order")
    {
    }
};

/// Formal Laurent series in the lattice parameter with star-element
/// coefficients. Powers below `lo` are zero, [lo, hi] are stored, and
/// anything above hi is untracked; operations propagate the guaranteed
/// window so a coefficient is never read past what is actually known.
template <class C>
struct EpsSeries {
    int lo = 0;
    int hi = -1;
    std::vector<StarElem<C>> c; // coefficients lo..hi

    bool tracked(int k) const { return k >= lo && k <= hi; }
};

/// K_l generators -> series over the limit algebra.
template <class C>
struct Embedding {
    std::map<std::string, EpsSeries<C>> images;
};

/// Operations need the F-side backend context; `cap` bounds how far series
/// are tracked (a few orders above the requested eps order).
template <class Ctx>
class EpsRing {
public:
    using C = CoefOf<Ctx>;
    using S = EpsSeries<C>;

    EpsRing(const AlgebraSpec& F, Ctx ctx, int cap)
        : F_(F), ev_(F, ctx), cap_(cap)
    {
    }

    const AlgebraSpec& algebra() const { return F_; }
    Evaluator<Ctx>& evaluator() { return ev_; }
    int cap() const { return cap_; }

    S zero()
    {
        S s;
        s.lo = 0;
        s.hi = cap_;
        s.c.assign(static_cast<size_t>(cap_) + 1, star_zero(ev_.ctx()));
        return s; // all-zero, fully tracked; c always spans [lo, hi]
    }
    S of_elem(const StarElem<C>& e, int power = 0)
    {
        S s = zero();
        if (!star_is_zero(ev_.ctx(), e))
            set(s, power, e);
        return s;
    }
    S of_tree(const ExprPtr& t, int power = 0) { return of_elem(ev_(t), power); }

    void set(S& s, int k, const StarElem<C>& e)
    {
        if (k > s.hi || k > cap_)
            throw EpsOrderExhausted();
        while (s.lo > k) {
            s.c.insert(s.c.begin(), star_zero(ev_.ctx()));
            --s.lo;
        }
        s.c[static_cast<size_t>(k - s.lo)] = e;
    }

    StarElem<C> coeff(const S& s, int k)
    {
        if (k < s.lo)
            return star_zero(ev_.ctx());
        if (!s.tracked(k))
            throw EpsOrderExhausted();
        return s.c[static_cast<size_t>(k - s.lo)];
    }

    S add(const S& a, const S& b)
    {
        S r;
        r.lo = std::min(a.lo, b.lo);
        r.hi = std::min(a.hi, b.hi);
        for (int k = r.lo; k <= r.hi; ++k) {
            auto ca = k >= a.lo && k <= a.hi ? a.c[static_cast<size_t>(k - a.lo)] : star_zero(ev_.ctx());
            auto cb = k >= b.lo && k <= b.hi ? b.c[static_cast<size_t>(k - b.lo)] : star_zero(ev_.ctx());
            r.c.push_back(star_add(ev_.ctx(), ca, cb));
        }
        return normalize(r);
    }

    S neg(const S& a)
    {
        S r = a;
        for (auto& e : r.c)
            e = star_neg(ev_.ctx(), e);
        return r;
    }

    S mul(const S& a, const S& b)
    {
        S r;
        r.lo = a.lo + b.lo;
        r.hi = std::min({a.hi + b.lo, b.hi + a.lo, cap_});
        for (int k = r.lo; k <= r.hi; ++k) {
            auto acc = star_zero(ev_.ctx());
            for (int i = a.lo; i <= a.hi; ++i) {
                int j = k - i;
                if (j < b.lo || j > b.hi)
                    continue;
                acc = star_add(ev_.ctx(), acc,
                               star_mul(ev_.ctx(), a.c[static_cast<size_t>(i - a.lo)],
                                        b.c[static_cast<size_t>(j - b.lo)]));
            }
            r.c.push_back(acc);
        }
        return normalize(r);
    }

    S inv(const S& a)
    {
        S t = normalize_copy(a);
        if (t.c.empty())
            throw NotInvertible("zero eps-series");
        // valuation = t.lo after trimming leading zero coefficients
        auto lead_inv = star_inv(ev_.ctx(), t.c.front());
        S r;
        r.lo = -t.lo;
        r.hi = t.hi - 2 * t.lo;
        if (r.hi > cap_)
            r.hi = cap_;
        int terms = r.hi - r.lo + 1;
        std::vector<StarElem<C>> out;
        for (int m = 0; m < terms; ++m) {
            // b_m with sum_{i+j=m} a_{lo+i} b_j = delta_{m0} (shifted indices)
            auto acc = m == 0 ? star_scalar(ev_.ctx(), Rational(1)) : star_zero(ev_.ctx());
            for (int i = 1; i <= m; ++i) {
                int ai = t.lo + i;
                if (ai > t.hi)
                    break;
                acc = star_sub(ev_.ctx(), acc,
                               star_mul(ev_.ctx(), t.c[static_cast<size_t>(i)], out[static_cast<size_t>(m - i)]));
            }
            out.push_back(star_mul(ev_.ctx(), lead_inv, acc));
        }
        r.c = std::move(out);
        return r;
    }

    S scale(const S& a, const Rational& q)
    {
        S r = a;
        for (auto& e : r.c)
            e = star_scale(ev_.ctx(), e, q);
        return r;
    }

    /// Shift by eps^-m, demanding the tracked low coefficients vanish.
    S div_eps(const S& a, int m)
    {
        for (int k = a.lo; k < m && k <= a.hi; ++k)
            if (!star_is_zero(ev_.ctx(), a.c[static_cast<size_t>(k - a.lo)]))
                throw ModelError("series not divisible by eps^" + std::to_string(m));
        S r = a;
        r.lo -= m;
        r.hi -= m;
        return r;
    }

    bool is_zero_through(const S& a, int order)
    {
        if (a.hi < order)
            throw EpsOrderExhausted();
        for (int k = a.lo; k <= order; ++k)
            if (!star_is_zero(ev_.ctx(), a.c[static_cast<size_t>(k - a.lo)]))
                return false;
        return true;
    }

    bool is_zero_classical_through(const S& a, int order)
    {
        if (a.hi < order)
            throw EpsOrderExhausted();
        for (int k = a.lo; k <= order; ++k)
            if (!star_is_zero_classical(ev_.ctx(), a.c[static_cast<size_t>(k - a.lo)]))
                return false;
        return true;
    }

    /// Evaluate a K-side tree through generator images.
    S eval(const ExprPtr& e, const Embedding<C>& psi)
    {
        auto it = memo_.find(e);
        if (it != memo_.end())
            return it->second;
        S v = eval_node(e, psi);
        memo_.emplace(e, v);
        return v;
    }
    void clear_memo() { memo_.clear(); }

private:
    S normalize(S s)
    {
        while (!s.c.empty() && star_is_zero(ev_.ctx(), s.c.front())) {
            s.c.erase(s.c.begin());
            ++s.lo;
        }
        if (s.c.empty()) { // all-zero: rebase the window at 0
            s.lo = 0;
            s.c.assign(static_cast<size_t>(std::max(s.hi, 0)) + 1, star_zero(ev_.ctx()));
        }
        return s;
    }
    S normalize_copy(const S& s) { return normalize(s); }

    S eval_node(const ExprPtr& e, const Embedding<C>& psi)
    {
        switch (e->kind) {
        case Expr::Kind::Gen: {
            auto it = psi.images.find(e->name);
            if (it != psi.images.end())
                return it->second;
            return of_tree(gen(e->name)); // F-side symbol or derived generator
        }
        case Expr::Kind::Scalar:
            return of_elem(star_scalar(ev_.ctx(), e->value));
        case Expr::Kind::Sum: {
            S acc = zero();
            for (auto& k : e->kids)
                acc = add(acc, eval(k, psi));
            return acc;
        }
        case Expr::Kind::Prod: {
            S acc = of_elem(star_scalar(ev_.ctx(), Rational(1)));
            for (auto& k : e->kids)
                acc = mul(acc, eval(k, psi));
            return acc;
        }
        case Expr::Kind::Inv:
            return inv(eval(e->kids[0], psi));
        case Expr::Kind::Pow: {
            S acc = of_elem(star_scalar(ev_.ctx(), Rational(1)));
            for (int i = 0; i < e->exponent; ++i)
                acc = mul(acc, eval(e->kids[0], psi));
            return acc;
        }
        }
        throw ModelError("unreachable");
    }

    const AlgebraSpec& F_;
    Evaluator<Ctx> ev_;
    int cap_;
    std::unordered_map<ExprPtr, S> memo_;
};

/// JSON dump: coefficients by eps power over the tracked window.
std::string json_of_eps(const AlgebraSpec& F, const EpsSeries<RatFn>& s);

/// The embedding images for odd l (target F_l) and l = 2 (target F_2).
template <class Ctx>
Embedding<CoefOf<Ctx>> psi_odd(EpsRing<Ctx>& R, const AlgebraSpec& K);
template <class Ctx>
Embedding<CoefOf<Ctx>> psi_l2(EpsRing<Ctx>& R);

/// Closed A_{2n} flow on the psi generators of F_l (gamma inhomogeneities).
Derivation limit_flow(const AlgebraSpec& F);

/// Result rows of the continuous-limit suites; `run_climit` drives them in
/// either backend and either slice.
struct ClimitOutcome {
    bool pass = true;
    int identities = 0;
    std::vector<std::string> failures;
    int64_t max_degree = 0;
};

/// check is one of: lemma-psi, partial1, conind, concom, theorem-a2n, qp2,
/// equivariance, intertwine.
ClimitOutcome run_climit_exact(const std::string& check, int l, int k_order, int eps_order,
                               bool classical);
ClimitOutcome run_climit_modular(const std::string& check, int l, int k_order, int eps_order,
                                 uint64_t prime, uint64_t seed, bool classical);

CheckReport run_climit(const std::string& check, int l, const RunOptions& opt);

} // namespace qp
