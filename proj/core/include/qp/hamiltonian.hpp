#pragma once

#include "qp/check.hpp"
#include "qp/roots.hpp"

namespace qp {

struct BadAlgebra : std::invalid_argument {
    explicit BadAlgebra(const std::string& w) : std::invalid_argument(w) {}
};

/// The defining Hamiltonian of the K_l flow (all parities, including the
/// special l = 1, 2, 3 forms with their explicit hbar terms).
ExprPtr hamiltonian_H0(const AlgebraSpec& A);

/// Closed flow form of a single coordinate (valid on the K and A families;
/// the alpha and k generators resolve through each algebra's dictionary).
ExprPtr closed_flow_tree(const AlgebraSpec& A, int i);

/// The closed flow forms: a derivation defined on every generator of K_l
/// (plus the derived named sums), with d(alpha_i) = d(hbar) = 0.
Derivation painleve_flow(const AlgebraSpec& A);

/// [H_0, f_i] == hbar * (flow f_i - inhomogeneity) for every coordinate.
std::vector<Identity> theorem1_identities(const AlgebraSpec& A);

/// The dependent-relations identities (polynomial sector, exact).
std::vector<Identity> conservation_identities(const AlgebraSpec& A);

/// The x0-rescaled system for odd l; rational sector, certified mod h^{K+1}.
std::vector<Identity> rescaled_flow_identities(const AlgebraSpec& A);

/// Canonical quantum coordinates and both substitution directions.
struct CanonicalMaps {
    AlgebraSpec C;                            // canonical coordinate algebra
    std::map<std::string, ExprPtr> to_canonical; // f_i -> expression in (q; p; x)
    std::map<std::string, ExprPtr> to_f;         // q_i, p_i, x -> expression in f's
};

CanonicalMaps canonical_map(const AlgebraSpec& K);

/// Heisenberg form: canonical relations, round trips, [H, y] vs the
/// pushed-forward flow, and the central flows dx = k resp. dx_j = (k/2) x_j.
std::vector<Identity> heisenberg_identities(const AlgebraSpec& K, const CanonicalMaps& maps);

} // namespace qp
