#pragma once

#include "qp/mpoly.hpp"
#include "qp/ratfn.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace qp {

/// Default modulus: the 61-bit Mersenne prime.
constexpr uint64_t kDefaultPrime = 2305843009213693951ULL;

struct BadPoint : std::runtime_error {
    explicit BadPoint(const std::string& what) : std::runtime_error(what) {}
};

struct JetAccuracyExhausted : std::logic_error {
    JetAccuracyExhausted()
        : std::logic_error("jet accuracy exhausted; raise the jet order for this check") {}
};

/// Arithmetic mod a fixed prime < 2^62.
class Zp {
public:
    explicit Zp(uint64_t p = kDefaultPrime) : p_(p) {}
    uint64_t prime() const { return p_; }
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p_; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p_ - b) % p_; }
    uint64_t mul(uint64_t a, uint64_t b) const
    {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p_);
    }
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t inv(uint64_t a) const;
    uint64_t of_rational(const Rational& c) const;
    uint64_t of_int(int64_t v) const;

private:
    uint64_t p_;
};

/// splitmix64; deterministic stream for reproducible reports.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next();
    uint64_t uniform(uint64_t lo, uint64_t hi); // inclusive bounds
};

/// A random evaluation point: one residue per registered symbol.
struct ModularPoint {
    uint64_t prime = kDefaultPrime;
    uint64_t seed = 0;
    std::vector<uint64_t> assignment; // indexed by symbol id

    static ModularPoint sample(int nsymbols, uint64_t prime, uint64_t seed);
};

uint64_t eval_mod(const MPoly& p, const ModularPoint& pt);
/// Field evaluation num * den^-1; throws BadPoint when den vanishes.
uint64_t eval_mod(const RatFn& r, const ModularPoint& pt);

/// Probabilistic equality: a - b evaluated at `trials` independent random
/// points (degenerate points are resampled, bounded). `bound_out`, when
/// given, receives the Schwartz-Zippel failure bound (degree/prime)^trials.
bool equal_modular(const RatFn& a, const RatFn& b, int trials, uint64_t prime, uint64_t seed,
                   double* bound_out = nullptr);

/// Shared layout for truncated multivariate power series mod p in the
/// displacement variables of the algebra coordinates ("jets"). Jets make
/// point evaluation commute with the coordinate derivatives the star
/// product takes, so identity checks stay sound under Schwartz-Zippel.
class JetSpace {
public:
    JetSpace(int nvars, int order, uint64_t prime);

    int nvars() const { return nvars_; }
    int order() const { return order_; }
    const Zp& field() const { return zp_; }
    int size() const { return static_cast<int>(monos_.size()); }
    /// Index of the product monomial, or -1 when it exceeds the order.
    int mul_index(int a, int b) const { return mul_table_[static_cast<size_t>(a) * monos_.size() + b]; }
    const std::vector<uint8_t>& mono(int i) const { return monos_[static_cast<size_t>(i)]; }
    int var_index(int v) const; // index of the degree-1 monomial of variable v
    /// d/dvar of monomial i: target index (or -1) and integer multiplier.
    std::pair<int, int> diff_index(int var, int i) const
    {
        return diff_table_[static_cast<size_t>(var) * monos_.size() + static_cast<size_t>(i)];
    }

private:
    int nvars_, order_;
    Zp zp_;
    std::vector<std::vector<uint8_t>> monos_;
    std::vector<int> mul_table_;
    std::vector<std::pair<int, int>> diff_table_;
};

/// Truncated jets lose one displacement order per derivative; `accuracy`
/// tracks how many orders remain trustworthy, and zero tests read only
/// those slots. Every hbar grade in a star product pairs with one
/// derivative, so grade-k coefficients keep accuracy order-k >= 0.
class Jet {
public:
    Jet() : sp_(nullptr) {}
    explicit Jet(const JetSpace* sp)
        : sp_(sp), c_(static_cast<size_t>(sp->size()), 0), acc_(sp->order()) {}

    static Jet constant(const JetSpace* sp, uint64_t v);
    static Jet coordinate(const JetSpace* sp, int var, uint64_t base_value);

    const JetSpace* space() const { return sp_; }
    int accuracy() const { return acc_; }
    bool is_zero() const;
    uint64_t value() const { return c_.empty() ? 0 : c_[0]; } // constant slot

    Jet operator-() const;
    Jet operator+(const Jet& o) const;
    Jet operator-(const Jet& o) const;
    Jet operator*(const Jet& o) const;
    Jet mul_scalar(const Rational& r) const;
    /// Series inverse; throws BadPoint when the constant slot is 0.
    Jet inv() const;
    Jet derivative(int var) const;

    bool operator==(const Jet& o) const { return c_ == o.c_; }

private:
    const JetSpace* sp_;
    std::vector<uint64_t> c_;
    int acc_ = 0;
};

/// Evaluate an exact polynomial into a jet. coord_var[sym] gives the jet
/// variable of a coordinate symbol, or -1 for centrals (plain residue).
Jet eval_jet(const MPoly& p, const JetSpace& sp, const ModularPoint& pt,
             const std::vector<int>& coord_var);

} // namespace qp
