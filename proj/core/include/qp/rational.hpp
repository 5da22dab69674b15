#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qp {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long num, long den = 1) { return Rational(num, den); }

inline std::string to_string(const Rational& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parse "a" or "a/b". Throws std::invalid_argument on malformed input.
Rational rational_from_string(const std::string& s);

} // namespace qp
