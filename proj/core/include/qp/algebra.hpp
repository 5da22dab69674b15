#pragma once

#include "qp/expr.hpp"
#include "qp/star.hpp"
#include "qp/symbol.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace qp {

struct ConstructionFailure : std::runtime_error {
    explicit ConstructionFailure(const std::string& w) : std::runtime_error(w) {}
};

/// Indices of the affine diagram live in Z/(l+1)Z.
inline int cyclic(int i, int l)
{
    int m = l + 1;
    return ((i % m) + m) % m;
}

enum class Family { K, A, F, Canonical };

/// A presented algebra realized as a star-product model: commuting symbol
/// registry, constant antisymmetric pairing on the coordinates, truncation
/// order, derived-generator definitions, and the presentation's relations.
struct AlgebraSpec {
    Family family = Family::K;
    std::string name; // e.g. "K_3"
    int l = 0;

    SymbolTable symbols;
    StarModel model;
    std::vector<std::string> coordinate_names;

    /// Derived generators (eliminated coordinates, u-chains, named sums).
    /// Leaves of these trees are raw symbols or "h".
    std::map<std::string, ExprPtr> gens;

    struct Relation {
        std::string label;
        ExprPtr residual;   // must evaluate to zero when holds == true
        bool holds = true;  // false: stated relation that cannot hold in any
                            // nondegenerate model; residual is reported instead
        std::string note;
    };
    std::vector<Relation> relations;

    int order() const { return model.order; }
    bool is_coordinate(const std::string& n) const;
    int coord_pos(const std::string& n) const;

    /// K_1 carries three f generators (the alphas still live mod 2); every
    /// other algebra indexes f cyclically mod l+1.
    std::string fsym(int i) const
    {
        return "f" + std::to_string(l == 1 ? i : cyclic(i, l));
    }
    std::string asym(int i) const { return "alpha" + std::to_string(cyclic(i, l)); }
};

/// K_l for l >= 2; K_1 is built on the canonical coordinates (q, p, x) with
/// f0 := x - q - p^2, so the l=1 presentation holds as derived identities.
AlgebraSpec build_K(int l, int order);

/// The Lax algebra A_l (t, eps_i, u-coordinates). For odd l and for l=1 the
/// stated presentation is degenerate; the model keeps the compatibility
/// subsystem exact and records the residuals of the remaining relations.
AlgebraSpec build_A(int l, int order);

/// Continuous-limit targets: F_l for odd l >= 3, F_2 for l = 2.
AlgebraSpec build_F(int l, int order);

/// Canonical coordinate algebra (q_i; p_i; x) resp. (q_i; p_i; x0, x1).
AlgebraSpec build_canonical(int l, int order);

AlgebraSpec build_algebra(const std::string& name, int l, int order);

/// Tree evaluation into the star model; memoizes on shared subtrees.
template <class Ctx>
class Evaluator {
public:
    using C = CoefOf<Ctx>;

    Evaluator(const AlgebraSpec& A, Ctx ctx) : A_(A), ctx_(std::move(ctx)) {}

    const AlgebraSpec& algebra() const { return A_; }
    const Ctx& ctx() const { return ctx_; }

    StarElem<C> operator()(const ExprPtr& e)
    {
        auto it = memo_.find(e);
        if (it != memo_.end())
            return it->second;
        auto v = eval_node(e);
        memo_.emplace(e, v); // keyed by owning pointer so addresses never recycle
        return v;
    }

    StarElem<C> generator(const std::string& name) { return (*this)(gen(name)); }

private:
    StarElem<C> eval_node(const ExprPtr& e)
    {
        switch (e->kind) {
        case Expr::Kind::Gen: {
            if (e->name == "h")
                return star_hbar(ctx_);
            int sym = A_.symbols.index(e->name);
            if (sym >= 0)
                return star_symbol(ctx_, sym);
            auto it = A_.gens.find(e->name);
            if (it == A_.gens.end())
                throw BadIndex("generator " + e->name + " unknown in " + A_.name);
            return (*this)(it->second);
        }
        case Expr::Kind::Scalar:
            return star_scalar(ctx_, e->value);
        case Expr::Kind::Sum: {
            auto acc = star_zero(ctx_);
            for (auto& k : e->kids)
                acc = star_add(ctx_, acc, (*this)(k));
            return acc;
        }
        case Expr::Kind::Prod: {
            auto acc = star_scalar(ctx_, Rational(1));
            for (auto& k : e->kids)
                acc = star_mul(ctx_, acc, (*this)(k));
            return acc;
        }
        case Expr::Kind::Inv:
            try {
                return star_inv(ctx_, (*this)(e->kids[0]));
            } catch (const NotInvertible& err) {
                std::string where = to_string(e->kids[0]);
                if (where.size() > 120)
                    where = where.substr(0, 117) + "...";
                throw NotInvertible(std::string(err.what()) + " in (" + where + ")^-1");
            }
        case Expr::Kind::Pow: {
            auto base = (*this)(e->kids[0]);
            auto acc = star_scalar(ctx_, Rational(1));
            for (int i = 0; i < e->exponent; ++i)
                acc = star_mul(ctx_, acc, base);
            return acc;
        }
        }
        throw ModelError("unreachable expression kind");
    }

    const AlgebraSpec& A_;
    Ctx ctx_;
    std::unordered_map<ExprPtr, StarElem<C>> memo_;
};

inline Evaluator<ExactCtx> exact_evaluator(const AlgebraSpec& A)
{
    return Evaluator<ExactCtx>(A, ExactCtx{&A.model});
}

/// Sum-of-scalar-monomials tree for a commutative polynomial (symbols only).
ExprPtr tree_of_mpoly(const AlgebraSpec& A, const MPoly& p);

/// Verify every relation marked `holds` evaluates to zero exactly; throws
/// ConstructionFailure otherwise. Returns human-readable residuals of the
/// documented deviations.
std::vector<std::string> verify_relations(const AlgebraSpec& A);

} // namespace qp
