#pragma once

#include "qp/algebra.hpp"

namespace qp {

struct NotProper : std::invalid_argument {
    NotProper() : std::invalid_argument("chi is undefined on the full index set") {}
};
struct UndefinedMonomial : std::invalid_argument {
    UndefinedMonomial() : std::invalid_argument("f_K is not defined for K covering all residues") {}
};

/// Subset of Z/(l+1)Z with its decomposition into cyclically connected runs.
struct IndexSubset {
    int l = 0;
    std::vector<int> elems; // sorted residues

    /// Connected components as (start, length); a wrap-around component
    /// starts at its unique element whose predecessor is absent.
    std::vector<std::pair<int, int>> components() const;
    bool operator==(const IndexSubset& o) const { return l == o.l && elems == o.elems; }
    bool operator<(const IndexSubset& o) const { return elems < o.elems; }
};

IndexSubset complement(const IndexSubset& s);

/// The i-th fundamental weight as a rational-linear combination of the
/// alpha symbols of A (A must carry alpha0..alphal); weight 0 for i = 0.
RatFn fundamental_weight(const AlgebraSpec& A, int i);

/// Alternating weight sum over the components of a proper subset.
RatFn chi(const AlgebraSpec& A, const IndexSubset& c);

/// All K with |K| = d whose complement has only even-length components,
/// in lexicographic order of the sorted residues.
std::vector<IndexSubset> enumerate_S(int d, int l);

/// Ordered product tree f_K: within a component ascending from its start,
/// components in ascending start order. Undefined for |K| = l+1.
ExprPtr monomial_fK(const IndexSubset& k);

} // namespace qp
