#pragma once

#include "qp/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qp {

/// Symbolic expression over named generators. Products keep their order
/// (the algebra is noncommutative); inverse nodes evaluate through the
/// order-by-order star inverse.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Gen, Scalar, Sum, Prod, Inv, Pow };
    Kind kind;
    std::string name;           // Gen
    Rational value;             // Scalar
    std::vector<ExprPtr> kids;  // Sum, Prod, Inv (1 kid), Pow (1 kid)
    int exponent = 0;           // Pow, >= 0
};

ExprPtr gen(const std::string& name);
ExprPtr scalar(Rational v);
ExprPtr scalar(long v);
ExprPtr sum(std::vector<ExprPtr> kids);
ExprPtr prod(std::vector<ExprPtr> kids);
ExprPtr inverse(ExprPtr e);
ExprPtr pow(ExprPtr e, int n); // n >= 0
ExprPtr neg(const ExprPtr& e);
ExprPtr sub(const ExprPtr& a, const ExprPtr& b);
ExprPtr scale(Rational c, const ExprPtr& e);
/// a/b as a * b^-1 (order matters only when b is noncentral).
ExprPtr quotient(const ExprPtr& a, const ExprPtr& b);

/// Substitute generator images; shares unchanged subtrees.
ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& images);

/// Generators appearing in the tree.
void collect_gens(const ExprPtr& e, std::vector<std::string>& out);

std::string to_string(const ExprPtr& e);

/// Generator -> image; extends multiplicatively over trees.
struct Substitution {
    std::map<std::string, ExprPtr> images;
    ExprPtr operator()(const ExprPtr& e) const { return substitute(e, images); }
    ExprPtr operator()(const std::string& g) const;
};

/// Composition acting right-to-left: (a * b)(x) = a(b(x)).
Substitution compose(const Substitution& a, const Substitution& b);

/// A derivation given by its generator values; extends by the Leibniz rule,
/// with d(a^-1) = -a^-1 (da) a^-1 on inverse nodes.
struct Derivation {
    std::map<std::string, ExprPtr> values;
    ExprPtr operator()(const ExprPtr& e) const;
};

} // namespace qp
