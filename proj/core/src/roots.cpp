#include "qp/roots.hpp"

#include <algorithm>

namespace qp {

std::vector<std::pair<int, int>> IndexSubset::components() const
{
    std::vector<std::pair<int, int>> out;
    if (elems.empty())
        return out;
    const int m = l + 1;
    std::vector<bool> in(static_cast<size_t>(m), false);
    for (int e : elems)
        in[static_cast<size_t>(e)] = true;
    if (static_cast<int>(elems.size()) == m) {
        out.emplace_back(0, m);
        return out;
    }
    for (int s = 0; s < m; ++s) {
        if (!in[static_cast<size_t>(s)] || in[static_cast<size_t>(cyclic(s - 1, l))])
            continue; // not a component start
        int len = 0;
        while (in[static_cast<size_t>(cyclic(s + len, l))])
            ++len;
        out.emplace_back(s, len);
    }
    std::sort(out.begin(), out.end());
    return out;
}

IndexSubset complement(const IndexSubset& s)
{
    IndexSubset c;
    c.l = s.l;
    std::vector<bool> in(static_cast<size_t>(s.l + 1), false);
    for (int e : s.elems)
        in[static_cast<size_t>(e)] = true;
    for (int i = 0; i <= s.l; ++i)
        if (!in[static_cast<size_t>(i)])
            c.elems.push_back(i);
    return c;
}

RatFn fundamental_weight(const AlgebraSpec& A, int i)
{
    const int l = A.l;
    const int n = A.symbols.size();
    MPoly w(n);
    if (i == 0)
        return RatFn(w);
    for (int r = 1; r <= l; ++r) {
        Rational c = Rational(std::min(i, r)) - Rational(static_cast<long>(i) * r, l + 1);
        if (c != 0)
            w += MPoly::symbol(n, A.symbols.require(A.asym(r))).mul_scalar(c);
    }
    return RatFn(w);
}

RatFn chi(const AlgebraSpec& A, const IndexSubset& c)
{
    if (static_cast<int>(c.elems.size()) == c.l + 1)
        throw NotProper();
    RatFn acc = RatFn(MPoly(A.symbols.size()));
    for (auto [start, len] : c.components())
        for (int j = 0; j < len; ++j) {
            auto w = fundamental_weight(A, cyclic(start + j, c.l));
            acc = j % 2 == 0 ? acc + w : acc - w;
        }
    return acc;
}

std::vector<IndexSubset> enumerate_S(int d, int l)
{
    std::vector<IndexSubset> out;
    const int m = l + 1;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != d)
            continue;
        IndexSubset k;
        k.l = l;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i))
                k.elems.push_back(i);
        bool ok = true;
        for (auto [start, len] : complement(k).components())
            if (len % 2 != 0) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(std::move(k));
    }
    std::sort(out.begin(), out.end());
    return out;
}

ExprPtr monomial_fK(const IndexSubset& k)
{
    if (static_cast<int>(k.elems.size()) == k.l + 1)
        throw UndefinedMonomial();
    std::vector<ExprPtr> factors;
    for (auto [start, len] : k.components())
        for (int j = 0; j < len; ++j)
            factors.push_back(gen("f" + std::to_string(cyclic(start + j, k.l))));
    if (factors.empty())
        return scalar(1);
    return prod(std::move(factors));
}

} // namespace qp
