#include <doctest.h>

#include "qp/lax.hpp"
#include "qp/weyl.hpp"

using namespace qp;

namespace {

RunOptions exact_opt()
{
    RunOptions o;
    o.mode = RunOptions::Mode::Exact;
    return o;
}

} // namespace

TEST_CASE("matrix layout")
{
    auto A2 = build_A(2, 3);
    auto L = lax_L(A2);
    // bottom row carries z f0 and z
    CHECK(L.at(2, 0).count(1) == 1);
    CHECK(to_string(L.at(2, 0).at(1)) == "f0");
    CHECK(L.at(2, 1).count(1) == 1);
    auto B = lax_B(A2);
    CHECK(to_string(B.at(2, 2).at(0)) == "u0");
    auto A1 = build_A(1, 3);
    auto L1 = lax_L(A1);
    CHECK(to_string(L1.at(0, 1).at(0)) == "f1"); // f1 + z entry
    CHECK(L1.at(0, 1).count(1) == 1);
}

TEST_CASE("flow values")
{
    auto A1 = build_A(1, 3);
    auto dt = lax_flow(A1);
    auto ev = exact_evaluator(A1);
    // dt f2 = f1 - f0
    auto d = star_sub(ev.ctx(), ev(dt.values.at("f2")), ev(sub(gen("f1"), gen("f0"))));
    CHECK(star_is_zero(ev.ctx(), d));
    // dt eps1 = 0
    CHECK(star_is_zero(ev.ctx(), ev(dt(gen("eps1")))));
    // l=2: dt f0 = f0 f1 - f2 f0 + alpha0 with the eps dictionary
    auto A2 = build_A(2, 3);
    auto dt2 = lax_flow(A2);
    auto ev2 = exact_evaluator(A2);
    auto expect = sum({prod({gen("f0"), gen("f1")}), neg(prod({gen("f2"), gen("f0")})),
                       gen("alpha0")});
    CHECK(star_is_zero(ev2.ctx(), star_sub(ev2.ctx(), ev2(dt2.values.at("f0")), ev2(expect))));
}

TEST_CASE("compatibility residual vanishes identically for l = 1 and even l")
{
    for (int l : {1, 2, 4}) {
        auto A = build_A(l, 3);
        auto rep = run_identities("lax.residual", l, lax_residual_identities(A), exact_opt());
        INFO(l, ": ", (rep.pass ? std::string() : rep.failures.front()));
        CHECK(rep.pass);
    }
}

TEST_CASE("odd l: the residual is exactly -2h at the f_l row, nothing else")
{
    for (int l : {3, 5}) {
        auto A = build_A(l, 3);
        // as stated, the compatibility check fails...
        auto faithful = run_identities("lax.residual", l, lax_residual_identities(A), exact_opt());
        CHECK_FALSE(faithful.pass);
        CHECK(faithful.failures.size() == 1);
        // ...and the failure is the single pinned constant
        auto pinned = run_identities("lax.anomaly", l, lax_residual_anomaly_identities(A), exact_opt());
        INFO(l, ": ", (pinned.pass ? std::string() : pinned.failures.front()));
        CHECK(pinned.pass);
    }
}

TEST_CASE("residual components: dt eps, chains, coordinate flows")
{
    for (int l : {1, 2}) {
        auto A = build_A(l, 3);
        auto rep = run_identities("lax.components", l, lax_component_identities(A), exact_opt());
        INFO(l, ": ", (rep.pass ? std::string() : rep.failures.front()));
        CHECK(rep.pass);
    }
    // l=3: every component holds except the f_3 flow, off by the anomaly
    auto A3 = build_A(3, 3);
    auto rep3 = run_identities("lax.components", 3, lax_component_identities(A3), exact_opt());
    CHECK_FALSE(rep3.pass);
    REQUIRE(rep3.failures.size() == 1);
    CHECK(rep3.failures.front().find("dt f3") == 0);
}

TEST_CASE("u solution: chains and solved commutators")
{
    for (int l : {1, 2, 3, 4, 5}) {
        auto A = build_A(l, 3);
        auto rep = run_identities("lax.usolution", l, lax_usolution_identities(A), exact_opt());
        INFO(l, ": ", (rep.pass ? std::string() : rep.failures.front()));
        CHECK(rep.pass);
    }
    // spec examples at l=2
    auto A = build_A(2, 3);
    auto ev = exact_evaluator(A);
    CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), ev(sub(gen("u2"), gen("u0"))),
                                          ev(sub(gen("f1"), gen("f0"))))));
    auto c = star_commutator(ev.ctx(), ev.generator("u1"), ev.generator("f1"));
    CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), c, ev(gen("h")))));
}

TEST_CASE("gauge action reproduces the Weyl images, l = 2..3")
{
    for (int l : {2, 3}) {
        auto A = build_A(l, 3);
        for (int i = 0; i <= l; ++i) {
            auto rep = run_identities("lax.gauge", l,
                                      lax_gauge_identities(A, "s" + std::to_string(i)), exact_opt());
            INFO(l, " s", i, ": ", (rep.pass ? std::string() : rep.failures.front()));
            CHECK(rep.pass);
        }
        auto rep = run_identities("lax.gauge", l, lax_gauge_identities(A, "pi"), exact_opt());
        INFO(l, " pi: ", (rep.pass ? std::string() : rep.failures.front()));
        CHECK(rep.pass);
    }
}

TEST_CASE("gauge involutions return the pair")
{
    // s2 twice on the read-off coordinates: s2(s2(f_j)) = f_j realized through
    // the substitution route used by the read-off comparison
    auto A = build_A(2, 3);
    auto s2 = weyl_s(A, 2);
    auto ev = exact_evaluator(A);
    for (auto g : {"f0", "f1", "f2", "alpha2"}) {
        auto back = substitute(s2(g), s2.images);
        CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), ev(back), ev(gen(g)))));
    }
}

TEST_CASE("odd-l elimination chain replays, l = 3, 5")
{
    for (int l : {3, 5}) {
        auto A = build_A(l, 3);
        auto rep = run_identities("lax.odd-chain", l, lax_odd_chain_identities(A), exact_opt());
        INFO(l, ": ", (rep.pass ? std::string() : rep.failures.front()));
        CHECK(rep.pass);
    }
}

TEST_CASE("residual JSON dump lists exactly the anomaly for odd l")
{
    auto clean = lax_residual_json(build_A(2, 3));
    CHECK(clean.find("\"nonzero\":[]") != std::string::npos);
    auto odd = lax_residual_json(build_A(3, 3));
    CHECK(odd.find("\"row\":2,\"col\":3,\"z\":0") != std::string::npos);
    CHECK(odd.find("-2") != std::string::npos);
}

TEST_CASE("documented deviations of the stated A_l presentation are stable")
{
    auto dev3 = verify_relations(build_A(3, 3));
    CHECK(dev3.size() > 0);
    bool saw_ut = false;
    for (auto& d : dev3)
        if (d.find("[u0,t]=0") != std::string::npos)
            saw_ut = true;
    CHECK(saw_ut);
}
