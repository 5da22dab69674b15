#pragma once

#include "qp/mpoly.hpp"

#include <stdexcept>
#include <vector>

namespace qp {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero rational function") {}
};

/// Total order on polynomials (arbitrary but fixed); keys factor lists.
int mpoly_compare(const MPoly& a, const MPoly& b);

/// Multivariate rational function over Q. The denominator is kept as a
/// product of primitive factors with positive leading coefficients, so
/// reduction is repeated exact division; the arithmetic here never needs a
/// general gcd on large operands. Explicit construction from num/den runs
/// the full gcd (that is the normalize() entry point). Equality always
/// cross-multiplies, so an unreduced representation can never flip a verdict.
class RatFn {
public:
    RatFn() : num_(0) {}
    explicit RatFn(MPoly num) : num_(std::move(num)) {}
    RatFn(MPoly num, MPoly den); // full reduction

    static RatFn constant(int arity, Rational c) { return RatFn(MPoly::constant(arity, std::move(c))); }
    static RatFn symbol(int arity, int sym) { return RatFn(MPoly::symbol(arity, sym)); }

    const MPoly& num() const { return num_; }
    /// Expanded denominator (always primitive with positive leading coeff).
    MPoly den() const;
    const std::vector<std::pair<MPoly, int>>& den_factors() const { return den_; }
    int arity() const { return num_.arity(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }

    RatFn operator-() const;
    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    RatFn operator/(const RatFn& o) const;
    RatFn inv() const;
    RatFn mul_scalar(const Rational& c) const;

    RatFn derivative(int sym) const;

    bool operator==(const RatFn& o) const;
    bool operator!=(const RatFn& o) const { return !(*this == o); }

    /// Upper bound on total degree of num plus den (Schwartz-Zippel input).
    int64_t degree_bound() const;

private:
    void push_factor(const MPoly& f, int exp);
    void cancel();

    MPoly num_;
    std::vector<std::pair<MPoly, int>> den_; // sorted by mpoly_compare
};

} // namespace qp
