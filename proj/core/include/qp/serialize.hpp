#pragma once

#include "qp/algebra.hpp"

#include <string>

namespace qp {

/// Stable JSON forms (fixtures depend on them):
///   MPoly   -> [[[e0,...,eN], "num" or "num/den"], ...] ascending grlex
///   RatFn   -> {"num": MPoly, "den": MPoly}
///   StarElem-> {"algebra","l","order","symbols","coeffs":[RatFn by hbar power]}
std::string json_of_mpoly(const MPoly& p);
std::string json_of_ratfn(const RatFn& r);
std::string json_of_elem(const AlgebraSpec& A, const StarElem<RatFn>& e);

/// Algebra descriptor embedded in reports for reproducibility.
std::string json_of_algebra(const AlgebraSpec& A);

} // namespace qp
