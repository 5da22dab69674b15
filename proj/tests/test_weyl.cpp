#include <doctest.h>

#include "qp/weyl.hpp"

using namespace qp;

namespace {

bool same(const AlgebraSpec& A, const ExprPtr& a, const ExprPtr& b)
{
    auto ev = exact_evaluator(A);
    return star_is_zero(ev.ctx(), star_sub(ev.ctx(), ev(a), ev(b)));
}

RunOptions modular_opt(uint64_t seed = 3)
{
    RunOptions o;
    o.mode = RunOptions::Mode::Modular;
    o.seed = seed;
    return o;
}

} // namespace

TEST_CASE("reflection images")
{
    auto A = build_K(2, 3);
    auto s1 = weyl_s(A, 1);
    // s1(alpha0) = alpha0 + alpha1 (a_{10} = -1)
    CHECK(same(A, s1("alpha0"), sum({gen("alpha0"), gen("alpha1")})));
    CHECK(same(A, s1("alpha1"), neg(gen("alpha1"))));
    // s1(f2) = f2 + alpha1/f1 (u_{12} = +1)
    CHECK(same(A, s1("f2"), sum({gen("f2"), prod({gen("alpha1"), inverse(gen("f1"))})})));
    // pi(f_l) = f0
    auto pi = weyl_pi(A);
    CHECK(same(A, pi("f2"), gen("f0")));
    // l=1: s0(alpha1) = alpha1 + 2 alpha0
    auto A1 = build_K(1, 3);
    auto s0 = weyl_s(A1, 0);
    CHECK(same(A1, s0("alpha1"), sum({gen("alpha1"), scale(Rational(2), gen("alpha0"))})));
}

TEST_CASE("s_i preserves the defining relations (spot, modular)")
{
    auto A = build_K(3, 3);
    std::vector<Identity> items;
    for (int i = 0; i <= 3; ++i) {
        auto s = weyl_s(A, i);
        for (int j = 0; j <= 3; ++j) {
            auto img = sub(sub(prod({s(A.fsym(j)), s(A.fsym(j + 1))}),
                               prod({s(A.fsym(j + 1)), s(A.fsym(j))})),
                           gen("h"));
            items.push_back({"s" + std::to_string(i) + " [f,f]", &A, img, scalar(0)});
        }
    }
    CHECK(run_identities("weyl.relation-preservation", 3, items, modular_opt()).pass);
}

TEST_CASE("group relations, modular, l = 1..4")
{
    for (int l : {1, 2, 3, 4}) {
        auto A = build_K(l, 3);
        CHECK(run_identities("weyl.involution", l, weyl_involution_identities(A), modular_opt()).pass);
        CHECK(run_identities("weyl.rotation", l, weyl_rotation_identities(A), modular_opt()).pass);
        if (l >= 2)
            CHECK(run_identities("weyl.braid", l, weyl_braid_identities(A), modular_opt()).pass);
        if (l >= 3)
            CHECK(run_identities("weyl.commute", l, weyl_commute_identities(A), modular_opt()).pass);
    }
}

TEST_CASE("l=1 involution, exact nested rationals")
{
    auto A = build_K(1, 3);
    auto s0 = weyl_s(A, 0);
    auto twice = compose(s0, s0);
    CHECK(same(A, twice("f1"), gen("f1")));
    CHECK(same(A, twice("f2"), gen("f2")));
    // pi^2 = 1 and pi s0 = s1 pi on f2
    auto pi = weyl_pi(A);
    CHECK(same(A, compose(pi, pi)("f2"), gen("f2")));
    auto s1 = weyl_s(A, 1);
    CHECK(same(A, compose(pi, s0)("f2"), compose(s1, pi)("f2")));
}

TEST_CASE("braid on f2 at l=2, exact")
{
    auto A = build_K(2, 3);
    auto w1 = weyl_word(A, {"s0", "s1", "s0"});
    auto w2 = weyl_word(A, {"s1", "s0", "s1"});
    CHECK(same(A, w1("f2"), w2("f2")));
}

TEST_CASE("pi^(l+1) fixes generators exactly")
{
    auto A = build_K(4, 3);
    auto w = weyl_word(A, {"pi", "pi", "pi", "pi", "pi"});
    CHECK(same(A, w("f2"), gen("f2")));
    CHECK(same(A, weyl_pi_inverse(A)("f0"), gen("f4")));
}

TEST_CASE("Demazure operator values and twisted Leibniz")
{
    auto A = build_K(3, 3);
    auto ev = exact_evaluator(A);
    for (int i = 0; i <= 3; ++i) {
        CHECK(same(A, demazure(A, i, gen(A.asym(i))), scalar(-2)));
        CHECK(same(A, demazure(A, i, gen(A.fsym(i))), scalar(0)));
        CHECK(same(A, demazure(A, i, gen(A.fsym(i + 1))), inverse(gen(A.fsym(i)))));
        CHECK(same(A, demazure(A, i, gen(A.fsym(i - 1))), neg(inverse(gen(A.fsym(i))))));
    }
    // twisted Leibniz on a couple of pairs
    auto s1 = weyl_s(A, 1);
    for (auto [a, b] : {std::pair<ExprPtr, ExprPtr>{gen("f1"), gen("f2")},
                        {prod({gen("f0"), gen("f2")}), sum({gen("f3"), gen("alpha1")})}}) {
        auto lhs = demazure(A, 1, prod({a, b}));
        auto rhs = sum({prod({demazure(A, 1, a), b}), prod({s1(a), demazure(A, 1, b)})});
        CHECK(same(A, lhs, rhs));
    }
    (void)ev;
}

TEST_CASE("H transformation laws")
{
    // l=2, j=0: only s0 moves H0, by k alpha0/f0
    auto A2 = build_K(2, 3);
    CHECK(run_identities("weyl.h-transform", 2, h_transform_identities(A2, 0), modular_opt()).pass);
    {
        auto ev = exact_evaluator(A2);
        auto s1 = weyl_s(A2, 1);
        auto H0 = hamiltonian_H0(A2);
        CHECK(same(A2, sub(s1(H0), H0), scalar(0)));
        auto s0 = weyl_s(A2, 0);
        CHECK(same(A2, sub(s0(H0), H0),
                   prod({gen("k"), gen("alpha0"), inverse(gen("f0"))})));
    }
    // l=3 carries the x_j factor; check j=0,1 modular
    auto A3 = build_K(3, 3);
    for (int j : {0, 1})
        CHECK(run_identities("weyl.h-transform", 3, h_transform_identities(A3, j), modular_opt()).pass);
    // l=1 uses the even-type law
    auto A1 = build_K(1, 3);
    for (int j : {0, 1})
        CHECK(run_identities("weyl.h-transform", 1, h_transform_identities(A1, j), modular_opt()).pass);
}

TEST_CASE("equivariance of the flow under the extended Weyl action")
{
    for (int l : {1, 2, 3}) {
        auto A = build_K(l, 3);
        auto rep = run_identities("weyl.equivariance", l, equivariance_identities(A), modular_opt());
        INFO(l, ": ", (rep.pass ? std::string() : rep.failures.front()));
        CHECK(rep.pass);
    }
    // pi d f0 = d f1 holds exactly at l=2
    auto A = build_K(2, 3);
    auto flow = painleve_flow(A);
    auto pi = weyl_pi(A);
    CHECK(same(A, pi(flow.values.at("f0")), flow.values.at("f1")));
}

TEST_CASE("rotated Hamiltonian differences, even l closed form")
{
    RunOptions exact;
    exact.mode = RunOptions::Mode::Exact;
    for (int l : {2, 4})
        for (int j = 0; j <= l; ++j) {
            auto A = build_K(l, 3);
            auto rep = run_identities("weyl.h-differences", l, h_difference_identities(A, j), exact);
            INFO(l, " j=", j, ": ", (rep.pass ? std::string() : rep.failures.front()));
            CHECK(rep.pass);
        }
    // l=4, j=0 equals k(f2+f4) - (2k/5)x term by term
    auto A4 = build_K(4, 3);
    auto pi = weyl_pi(A4);
    auto H0 = hamiltonian_H0(A4);
    auto rhs = sum({prod({gen("k"), sum({gen("f2"), gen("f4")})}),
                    scale(Rational(-2, 5), prod({gen("k"), A4.gens.at("x")}))});
    CHECK(same(A4, sub(pi(H0), H0), rhs));
}

TEST_CASE("odd-l difference coefficient is n/(2n+2), not the stated n/(2n+1)")
{
    auto A3 = build_K(3, 3);
    auto fit = h_difference_fit_odd(A3, 0);
    CHECK(fit.shape_matches);
    CHECK(fit.fitted == Rational(1, 4));
    CHECK(fit.stated == Rational(1, 3));
    auto A5 = build_K(5, 3);
    for (int j : {0, 1}) {
        auto f5 = h_difference_fit_odd(A5, j);
        CHECK(f5.shape_matches);
        CHECK(f5.fitted == Rational(2, 6));
        CHECK(f5.fitted == Rational((5 - 1) / 2, 5 + 1));
    }
}

TEST_CASE("telescoping over the full rotation cycle")
{
    auto A = build_K(2, 3);
    auto pi = weyl_pi(A);
    auto H0 = hamiltonian_H0(A);
    auto H1 = pi(H0), H2 = pi(H1), H3 = pi(H2);
    CHECK(same(A, H3, H0));
}
