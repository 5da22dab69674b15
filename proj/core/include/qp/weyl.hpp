#pragma once

#include "qp/check.hpp"
#include "qp/hamiltonian.hpp"

namespace qp {

/// Generalized Cartan matrix entry a_ij of type A_l^(1) (a_01 = a_10 = -2
/// when l = 1) and the orientation matrix u_ij (+1 on i -> i+1, -1 on
/// i -> i-1, 0 otherwise).
int cartan_entry(int i, int j, int l);
int orientation_entry(int i, int j, int l);

/// The reflection s_i and the diagram rotation pi as substitutions on the
/// generators of K_l (nonlinear images at l = 1).
Substitution weyl_s(const AlgebraSpec& A, int i);
Substitution weyl_pi(const AlgebraSpec& A);
Substitution weyl_pi_inverse(const AlgebraSpec& A);

/// Letters act right to left: {"pi","s2","s1"} is pi s_2 s_1.
Substitution weyl_word(const AlgebraSpec& A, const std::vector<std::string>& letters);

/// Demazure operator: (s_i(e) - e) / alpha_i.
ExprPtr demazure(const AlgebraSpec& A, int i, const ExprPtr& e);

/// Generators on which group relations are verified.
std::vector<std::string> weyl_generators(const AlgebraSpec& A);

std::vector<Identity> weyl_involution_identities(const AlgebraSpec& A);
std::vector<Identity> weyl_braid_identities(const AlgebraSpec& A);     // empty for l = 1
std::vector<Identity> weyl_commute_identities(const AlgebraSpec& A);   // distant pairs
std::vector<Identity> weyl_rotation_identities(const AlgebraSpec& A);  // pi^(l+1), pi s_i = s_{i+1} pi

/// s_i(H_j) - H_j = d_ij k (alpha_j/f_j) [x_j for odd l], H_j = pi^j(H_0).
std::vector<Identity> h_transform_identities(const AlgebraSpec& A, int j);

/// w(d g) = d(w(g)) for w in {s_0..s_l, pi} and every generator g.
std::vector<Identity> equivariance_identities(const AlgebraSpec& A);

/// Even l: H_{j+1} - H_j = k sum_r f_{j+2r} - (nk/(2n+1)) x, exact.
std::vector<Identity> h_difference_identities(const AlgebraSpec& A, int j);

/// Odd l: the S_2 coefficient of H_{j+1} - H_j is fitted, not asserted.
struct HDifferenceFit {
    bool shape_matches = false; // difference matches the template for some c
    Rational fitted;            // c with coefficient -c*k on sum_{S_2} f_K
    Rational stated;           // n/(2n+1) as usually stated
    std::string detail;
};
HDifferenceFit h_difference_fit_odd(const AlgebraSpec& A, int j);

} // namespace qp
