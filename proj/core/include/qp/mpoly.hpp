#pragma once

#include "qp/rational.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace qp {

using ExpVec = std::vector<uint32_t>;

/// Graded lexicographic order: total degree first, then lexicographic on the
/// exponent vector (symbol 0 most significant).
struct GrlexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const;
};

uint64_t total_degree(const ExpVec& e);

/// Sparse multivariate polynomial over Q with a fixed arity. All stored
/// coefficients are nonzero; all exponent vectors share the arity.
class MPoly {
public:
    using TermMap = std::map<ExpVec, Rational, GrlexLess>;

    MPoly() : arity_(0) {}
    explicit MPoly(int arity) : arity_(arity) {}

    static MPoly constant(int arity, Rational c);
    static MPoly symbol(int arity, int sym, uint32_t exp = 1);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    /// Constant term (zero if absent).
    Rational constant_term() const;
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    int64_t degree() const; // total degree, -1 for zero
    int64_t degree_in(int sym) const;

    void add_term(const ExpVec& e, const Rational& c);

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly mul_scalar(const Rational& c) const;

    bool operator==(const MPoly& o) const { return arity_ == o.arity_ && terms_ == o.terms_; }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly derivative(int sym) const;

    /// Leading term under grlex.
    const std::pair<const ExpVec, Rational>& leading() const;

    /// Rational content: gcd of numerators / lcm of denominators, signed so
    /// that dividing by it leaves a primitive integer polynomial with
    /// positive leading coefficient.
    Rational content_signed() const;

    /// Exact division; returns nullopt if the division leaves a remainder.
    std::optional<MPoly> divide_exact(const MPoly& divisor) const;

    /// Substitute symbol -> polynomial (used by constraint elimination).
    MPoly substitute(int sym, const MPoly& value) const;

    /// Extend/permute to a new arity given old->new symbol index map.
    MPoly remap(int new_arity, const std::vector<int>& old_to_new) const;

    std::string str(const std::function<std::string(int)>& sym_name) const;

private:
    int arity_;
    TermMap terms_;
};

/// True multivariate gcd over Q (monic-free: primitive part over Z), with a
/// cheap sound coprimality certificate in front of the subresultant fallback.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

} // namespace qp
