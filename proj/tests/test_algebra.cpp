#include <doctest.h>

#include "qp/algebra.hpp"

using namespace qp;

namespace {

bool is_zero_tree(const AlgebraSpec& A, const ExprPtr& t)
{
    auto ev = exact_evaluator(A);
    return star_is_zero(ev.ctx(), ev(t));
}

ExprPtr comm_tree(const std::string& a, const std::string& b)
{
    return sub(prod({gen(a), gen(b)}), prod({gen(b), gen(a)}));
}

} // namespace

TEST_CASE("K_l presentations hold exactly")
{
    for (int l : {2, 3, 4, 5, 6, 7}) {
        auto A = build_K(l, 3);
        auto dev = verify_relations(A);
        CHECK(dev.empty());
    }
}

TEST_CASE("K_l cyclic wrap: [f_l, f_0] = h")
{
    auto A = build_K(4, 3);
    CHECK(is_zero_tree(A, sub(comm_tree("f4", "f0"), gen("h"))));
}

TEST_CASE("K_1 canonical realization derives the l=1 presentation")
{
    auto A = build_K(1, 3);
    CHECK(verify_relations(A).empty());
    // [f1, f0] = 2 h f2 as a spot check
    CHECK(is_zero_tree(A, sub(comm_tree("f1", "f0"), prod({scalar(2), gen("h"), gen("f2")}))));
    // x = f0 + f1 + f2^2 commutes with q and p
    auto x = sum({gen("f0"), gen("f1"), pow(gen("f2"), 2)});
    CHECK(is_zero_tree(A, sub(prod({x, gen("f2")}), prod({gen("f2"), x}))));
    CHECK(is_zero_tree(A, sub(prod({x, gen("f1")}), prod({gen("f1"), x}))));
}

TEST_CASE("A_l construction: even l satisfies the full presentation")
{
    for (int l : {2, 4, 6}) {
        auto A = build_A(l, 3);
        auto dev = verify_relations(A);
        CHECK(dev.empty());
    }
    auto A = build_A(2, 3);
    // the solved pairing: [u0, f0] = h and [f2, u0] = h
    CHECK(is_zero_tree(A, sub(comm_tree("u0", "f0"), gen("h"))));
    CHECK(is_zero_tree(A, sub(comm_tree("f2", "u0"), gen("h"))));
    // u2 - u0 = f1 - f0
    CHECK(is_zero_tree(A, sub(sub(gen("u2"), gen("u0")), sub(gen("f1"), gen("f0")))));
}

TEST_CASE("A_l odd: compatibility subsystem holds, documented deviations recorded")
{
    for (int l : {3, 5}) {
        auto A = build_A(l, 3);
        auto dev = verify_relations(A);
        // [u_i,t], odd-chain relations, and the wrap [f_l, u_0] deviate
        CHECK(dev.size() > 0);
        for (auto& d : dev)
            CHECK(d.find("unexpectedly holds") == std::string::npos);
    }
    auto A = build_A(3, 3);
    // forced value [u0, t] = 2h
    CHECK(is_zero_tree(A, sub(comm_tree("u0", "t"), prod({scalar(2), gen("h")}))));
    // parity sums pin the eliminated coordinates: f0+f2 = t/2
    CHECK(is_zero_tree(A, sub(sum({gen("f0"), gen("f2")}), scale(Rational(1, 2), gen("t")))));
}

TEST_CASE("A_1: compatibility signs, u2 chain")
{
    auto A = build_A(1, 3);
    auto dev = verify_relations(A);
    CHECK(dev.size() == 2); // [u1,f0] and [f0,u2] carry the reversed sign
    CHECK(is_zero_tree(A, sub(comm_tree("f0", "u1"), gen("h"))));
    CHECK(is_zero_tree(A, sub(sub(gen("u1"), gen("u2")), prod({scalar(2), gen("f2")}))));
    // alpha dictionary sums to k = 1
    CHECK(is_zero_tree(A, sub(gen("k"), scalar(1))));
}

TEST_CASE("F_l constructions")
{
    for (int l : {3, 5}) {
        auto A = build_F(l, 3);
        CHECK(verify_relations(A).empty());
        // constraint sums are central: pairing rows of the sums vanish
        auto ev = exact_evaluator(A);
        std::vector<ExprPtr> ev_sum;
        for (int i = 0; i <= l; i += 2)
            ev_sum.push_back(gen("phi" + std::to_string(i)));
        auto s = sum(ev_sum);
        CHECK(star_is_zero(ev.ctx(), ev(s)));
    }
    auto F2 = build_F(2, 3);
    CHECK(verify_relations(F2).empty());
    CHECK(is_zero_tree(F2, sub(comm_tree("psi", "phi0"), scale(Rational(1, 2), gen("h")))));
}

TEST_CASE("canonical coordinate algebras")
{
    for (int l : {2, 3, 4, 5}) {
        auto C = build_canonical(l, 3);
        CHECK(verify_relations(C).empty());
    }
    auto C = build_canonical(4, 3);
    CHECK(is_zero_tree(C, sub(comm_tree("p1", "q1"), gen("h"))));
    CHECK(is_zero_tree(C, comm_tree("p1", "q2")));
    CHECK(is_zero_tree(C, comm_tree("q1", "x")));
}

TEST_CASE("evaluator: ordered products, inverses, unknown generators")
{
    auto A = build_K(4, 3);
    auto ev = exact_evaluator(A);
    // product(f1, f0) = f0 f1 - h/2
    auto p = ev(prod({gen("f1"), gen("f0")}));
    CHECK(p.c[1] == RatFn::constant(A.symbols.size(), Rational(-1, 2)));
    CHECK_THROWS_AS(ev(gen("nosuch")), BadIndex);
    CHECK_THROWS_AS(ev(inverse(sub(gen("f0"), gen("f0")))), NotInvertible);
}

TEST_CASE("build_algebra dispatch and error paths")
{
    CHECK(build_algebra("K_l", 3, 2).name == "K_3");
    CHECK_THROWS_AS(build_algebra("nosuch", 3, 3), ConstructionFailure);
    CHECK_THROWS_AS(build_K(0, 3), ConstructionFailure);
    CHECK_THROWS_AS(build_F(4, 3), ConstructionFailure);
}
