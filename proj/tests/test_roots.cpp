#include <doctest.h>

#include "qp/roots.hpp"

using namespace qp;

namespace {

RatFn alpha_combo(const AlgebraSpec& A, std::vector<std::pair<int, Rational>> terms)
{
    MPoly p(A.symbols.size());
    for (auto& [i, c] : terms)
        p += MPoly::symbol(A.symbols.size(), A.symbols.require(A.asym(i))).mul_scalar(c);
    return RatFn(p);
}

} // namespace

TEST_CASE("fundamental weights")
{
    auto A2 = build_K(2, 3);
    CHECK(fundamental_weight(A2, 0).is_zero());
    // l=2: w1 = (2 a1 + a2)/3, w2 = (a1 + 2 a2)/3
    CHECK(fundamental_weight(A2, 1) == alpha_combo(A2, {{1, {2, 3}}, {2, {1, 3}}}));
    CHECK(fundamental_weight(A2, 2) == alpha_combo(A2, {{1, {1, 3}}, {2, {2, 3}}}));
    // w1 - w2 = (a1 - a2)/3, the f0 coefficient of H_0 at l=2
    CHECK(fundamental_weight(A2, 1) - fundamental_weight(A2, 2) ==
          alpha_combo(A2, {{1, {1, 3}}, {2, {-1, 3}}}));
}

TEST_CASE("weight identity: w_{i-1} - 2 w_i + w_{i+1} = -alpha_i")
{
    for (int l : {2, 3, 4, 5, 6}) {
        auto A = build_K(l, 2);
        for (int i = 1; i <= l; ++i) {
            auto prev = i - 1 >= 1 ? fundamental_weight(A, i - 1) : RatFn(MPoly(A.symbols.size()));
            auto next = i + 1 <= l ? fundamental_weight(A, i + 1) : RatFn(MPoly(A.symbols.size()));
            auto lhs = prev - fundamental_weight(A, i).mul_scalar(Rational(2)) + next;
            CHECK(lhs == -alpha_combo(A, {{i, Rational(1)}}));
        }
    }
}

TEST_CASE("proof bookkeeping: chi(G\\{i-1}) - chi(G\\{i+1}) = alpha_i - d_{i0} k")
{
    for (int l : {2, 4, 6}) {
        auto A = build_K(l, 2);
        MPoly kpoly(A.symbols.size());
        for (int i = 0; i <= l; ++i)
            kpoly += MPoly::symbol(A.symbols.size(), A.symbols.require(A.asym(i)));
        for (int i = 0; i <= l; ++i) {
            IndexSubset m1{l, {cyclic(i - 1, l)}}, p1{l, {cyclic(i + 1, l)}};
            auto lhs = chi(A, complement(m1)) - chi(A, complement(p1));
            auto rhs = alpha_combo(A, {{i, Rational(1)}});
            if (i == 0)
                rhs = rhs - RatFn(kpoly);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("chi on components")
{
    auto A2 = build_K(2, 2);
    // chi({1}) = w1
    CHECK(chi(A2, {2, {1}}) == fundamental_weight(A2, 1));
    // chi(G\{0}) = chi({1,2}) = w1 - w2
    CHECK(chi(A2, complement({2, {0}})) ==
          fundamental_weight(A2, 1) - fundamental_weight(A2, 2));
    auto A3 = build_K(3, 2);
    // chi({1,2}) = w1 - w2 for l=3
    CHECK(chi(A3, {3, {1, 2}}) == fundamental_weight(A3, 1) - fundamental_weight(A3, 2));
    CHECK_THROWS_AS(chi(A2, {2, {0, 1, 2}}), NotProper);
}

TEST_CASE("component decomposition and wrap-around starts")
{
    IndexSubset s{4, {0, 1, 4}}; // cyclically {4,0,1}: one component starting at 4
    auto comps = s.components();
    REQUIRE(comps.size() == 1);
    CHECK(comps[0] == std::pair<int, int>{4, 3});

    IndexSubset two{5, {0, 3}};
    auto c2 = two.components();
    REQUIRE(c2.size() == 2);
    CHECK(c2[0] == std::pair<int, int>{0, 1});
    CHECK(c2[1] == std::pair<int, int>{3, 1});
}

TEST_CASE("S_d enumeration against brute-force facts")
{
    // l=2: S_1 = {{0},{1},{2}}
    auto s12 = enumerate_S(1, 2);
    REQUIRE(s12.size() == 3);
    for (int i = 0; i < 3; ++i)
        CHECK(s12[static_cast<size_t>(i)].elems == std::vector<int>{i});

    // l=4: S_3 = five cyclic windows {i, i+1, i+2}
    auto s34 = enumerate_S(3, 4);
    REQUIRE(s34.size() == 5);
    for (auto& k : s34) {
        auto comps = k.components();
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].second == 3);
    }

    // l=5: S_2 = six adjacent pairs + three antipodal pairs
    auto s25 = enumerate_S(2, 5);
    REQUIRE(s25.size() == 9);
    int adjacent = 0, antipodal = 0;
    for (auto& k : s25) {
        int d = cyclic(k.elems[1] - k.elems[0], 5);
        if (d == 1 || d == 5)
            ++adjacent;
        if (d == 3)
            ++antipodal;
    }
    CHECK(adjacent == 6);
    CHECK(antipodal == 3);

    // counts: |S_1| = l+1 for even l
    for (int l : {2, 4, 6})
        CHECK(enumerate_S(1, l).size() == static_cast<size_t>(l + 1));
    // l=6: the complement of K may be one 4-run (7 ways) or two 2-runs
    // (7 ways); both parities are even, so |S_3| = 14 there
    auto s36 = enumerate_S(3, 6);
    CHECK(s36.size() == 14);
    int one_run = 0, two_runs = 0;
    for (auto& k : s36) {
        auto comps = complement(k).components();
        if (comps.size() == 1)
            ++one_run;
        if (comps.size() == 2)
            ++two_runs;
    }
    CHECK(one_run == 7);
    CHECK(two_runs == 7);
}

TEST_CASE("f_K monomials")
{
    auto A5 = build_K(5, 3);
    auto ev = exact_evaluator(A5);
    // f_{{1}} = f1
    auto m1 = ev(monomial_fK({5, {1}}));
    CHECK(m1.c[0] == RatFn::symbol(A5.symbols.size(), A5.symbols.require("f1")));
    // f_{{0,1}} = f0 * f1 = f0 f1 + h/2
    auto m01 = ev(monomial_fK({5, {0, 1}}));
    CHECK(m01.c[1] == RatFn::constant(A5.symbols.size(), Rational(1, 2)));
    // f_{{0,3}} = f0 f3 with commuting components, equal in either order
    auto m03 = ev(monomial_fK({5, {0, 3}}));
    CHECK(m03.c[1].is_zero());
    auto swapped = ev(prod({gen("f3"), gen("f0")}));
    CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), m03, swapped)));
    CHECK_THROWS_AS(monomial_fK({2, {0, 1, 2}}), UndefinedMonomial);
}

TEST_CASE("component order does not change f_K")
{
    auto A5 = build_K(5, 3);
    auto ev = exact_evaluator(A5);
    for (auto& k : enumerate_S(2, 5)) {
        auto comps = k.components();
        if (comps.size() != 2)
            continue;
        auto forward = ev(monomial_fK(k));
        // multiply components in reversed order by hand
        std::vector<ExprPtr> factors;
        for (auto it = comps.rbegin(); it != comps.rend(); ++it)
            for (int j = 0; j < it->second; ++j)
                factors.push_back(gen("f" + std::to_string(cyclic(it->first + j, 5))));
        auto backward = ev(prod(std::move(factors)));
        CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), forward, backward)));
    }
}
