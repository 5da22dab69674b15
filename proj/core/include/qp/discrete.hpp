#pragma once

#include "qp/check.hpp"
#include "qp/weyl.hpp"

namespace qp {

/// Shift operator words: T_1 = pi s_l ... s_1, T_i = s_{i-1} ... s_1 pi s_l ... s_i.
std::vector<std::string> translation_word(int i, int l);

/// T_i T_j = T_j T_i and T_1 ... T_{l+1} = 1 on every generator.
std::vector<Identity> translation_commute_identities(const AlgebraSpec& A);
std::vector<Identity> translation_product_identities(const AlgebraSpec& A);

/// T_i(alpha_{i-1}) = alpha_{i-1} + k, T_i(alpha_i) = alpha_i - k, rest fixed.
std::vector<Identity> translation_alpha_identities(const AlgebraSpec& A);

/// The l = 2 system: T_1 images equal the standard continued-fraction form.
std::vector<Identity> discrete_system_l2_identities(const AlgebraSpec& A);

/// T_1 preserves the central sums (x for even l; x0 and x1 for odd l).
std::vector<Identity> translation_invariant_identities(const AlgebraSpec& A);

/// r_0 = s_0 s_1 s_0, r_j = s_{j+1} commute with T_1 and satisfy the
/// A_{l-1}^(1) Coxeter relations.
std::vector<Identity> discrete_symmetry_identities(const AlgebraSpec& A);

/// Specialized-modular trajectory: iterate the one-step T_1 images
/// numerically on jets. Returns per-step JSON lines; throws BadPoint after
/// bounded resampling if every seed degenerates.
struct TrajectoryOptions {
    int steps = 50;
    int k_order = 3;
    uint64_t prime = kDefaultPrime;
    uint64_t seed = 1;
};
std::vector<std::string> discrete_trajectory(const AlgebraSpec& A, const TrajectoryOptions& opt);

} // namespace qp
