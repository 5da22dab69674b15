#include <doctest.h>

#include "qp/algebra.hpp"

#include <random>

using namespace qp;

namespace {

/// Random polynomial element of K_l: a few monomials in the f's and alphas.
ExprPtr random_poly(const AlgebraSpec& A, std::mt19937_64& rng, int max_terms = 4)
{
    std::uniform_int_distribution<int> nterms(1, max_terms), coeff(-3, 3), len(0, 2),
        pick(0, A.symbols.size() - 1);
    std::vector<ExprPtr> terms;
    for (int t = nterms(rng); t > 0; --t) {
        std::vector<ExprPtr> factors{scalar(coeff(rng) == 0 ? 1 : coeff(rng))};
        for (int m = len(rng); m >= 0; --m)
            factors.push_back(gen(A.symbols.name(pick(rng))));
        terms.push_back(prod(std::move(factors)));
    }
    return sum(std::move(terms));
}

} // namespace

TEST_CASE("star product of adjacent and distant coordinates (l=4)")
{
    auto A = build_K(4, 3);
    auto ev = exact_evaluator(A);

    // f0 * f1 = f0 f1 + h/2
    auto p01 = ev(prod({gen("f0"), gen("f1")}));
    auto c0 = ev(prod({gen("f1"), gen("f0")})); // f0 f1 - h/2
    auto symm = star_scale(ev.ctx(), star_add(ev.ctx(), p01, c0), Rational(1, 2));
    CHECK(p01.c[1] == RatFn::constant(A.symbols.size(), Rational(1, 2)));
    CHECK(symm.c[1].is_zero());

    // f0 * f2 = f0 f2 (pairing 0)
    auto p02 = ev(prod({gen("f0"), gen("f2")}));
    CHECK(p02.c[1].is_zero());

    // unit
    auto u = ev(prod({scalar(1), gen("f3")}));
    CHECK(u.c[0] == RatFn::symbol(A.symbols.size(), A.symbols.require("f3")));
}

TEST_CASE("commutators reproduce the presentation (l=4)")
{
    auto A = build_K(4, 3);
    auto ev = exact_evaluator(A);
    auto comm = [&](const char* a, const char* b) {
        return star_commutator(ev.ctx(), ev.generator(a), ev.generator(b));
    };
    // [f1, f0] = -h
    auto c = comm("f1", "f0");
    CHECK(c.c[1] == RatFn::constant(A.symbols.size(), Rational(-1)));
    CHECK(c.c[0].is_zero());

    // [f2, f1+f3] = 0 by cancellation
    auto lhs = star_commutator(ev.ctx(), ev.generator("f2"),
                               ev(sum({gen("f1"), gen("f3")})));
    CHECK(star_is_zero(ev.ctx(), lhs));

    // [a, a] = 0 on random elements
    std::mt19937_64 rng(11);
    for (int i = 0; i < 5; ++i) {
        auto a = ev(random_poly(A, rng));
        CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), star_mul(ev.ctx(), a, a),
                                              star_mul(ev.ctx(), a, a))));
    }
}

TEST_CASE("commutator-derivation identity [f_i, phi] = h (d_{i+1} - d_{i-1}) phi")
{
    auto A = build_K(4, 3);
    auto ev = exact_evaluator(A);
    std::mt19937_64 rng(23);
    for (int i = 0; i <= 4; ++i) {
        for (int rep = 0; rep < 3; ++rep) {
            auto phi = ev(random_poly(A, rng));
            auto lhs = star_commutator(ev.ctx(), ev.generator(A.fsym(i)), phi);
            auto d1 = star_partial(ev.ctx(), A.symbols.require(A.fsym(i + 1)), phi);
            auto d2 = star_partial(ev.ctx(), A.symbols.require(A.fsym(i - 1)), phi);
            auto rhs = star_mul(ev.ctx(), star_hbar(ev.ctx()), star_sub(ev.ctx(), d1, d2));
            CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), lhs, rhs)));
            CHECK(lhs.exact);
        }
    }
}

TEST_CASE("star inverse")
{
    auto A = build_K(4, 3);
    auto ev = exact_evaluator(A);

    // inv(f0) has no hbar corrections
    auto i0 = star_inv(ev.ctx(), ev.generator("f0"));
    CHECK(i0.c[0] == RatFn(MPoly::constant(A.symbols.size(), 1),
                           MPoly::symbol(A.symbols.size(), A.symbols.require("f0"))));
    for (int k = 1; k <= 3; ++k)
        CHECK(i0.c[static_cast<size_t>(k)].is_zero());

    // inv(1 + h f1) = geometric series
    auto e = ev(sum({scalar(1), prod({gen("h"), gen("f1")})}));
    auto ie = star_inv(ev.ctx(), e);
    auto f1 = RatFn::symbol(A.symbols.size(), A.symbols.require("f1"));
    CHECK(ie.c[0] == RatFn::constant(A.symbols.size(), Rational(1)));
    CHECK(ie.c[1] == -f1);
    CHECK(ie.c[2] == f1 * f1);
    CHECK(ie.c[3] == -(f1 * f1 * f1));

    // inv(a) * a == 1 mod h^4 for random invertible a
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 4; ++rep) {
        auto a = ev(sum({scalar(1), random_poly(A, rng)}));
        if (a.c[0].is_zero())
            continue;
        auto ia = star_inv(ev.ctx(), a);
        auto unit = star_mul(ev.ctx(), ia, a);
        auto one = star_scalar(ev.ctx(), Rational(1));
        CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), unit, one)));
    }
}

TEST_CASE("partial derivative is a star derivation")
{
    auto A = build_K(4, 3);
    auto ev = exact_evaluator(A);
    int f1 = A.symbols.require("f1");

    auto d = star_partial(ev.ctx(), f1, ev.generator("f1"));
    CHECK(d.c[0] == RatFn::constant(A.symbols.size(), Rational(1)));

    auto m = ev(prod({gen("f0"), gen("f1"), gen("f2")}));
    auto dm = star_partial(ev.ctx(), f1, m);
    // product rule on the commutative coefficient of a star-evaluated product
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 4; ++rep) {
        auto a = ev(random_poly(A, rng));
        auto b = ev(random_poly(A, rng));
        auto lhs = star_partial(ev.ctx(), f1, star_mul(ev.ctx(), a, b));
        auto rhs = star_add(ev.ctx(), star_mul(ev.ctx(), star_partial(ev.ctx(), f1, a), b),
                            star_mul(ev.ctx(), a, star_partial(ev.ctx(), f1, b)));
        CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), lhs, rhs)));
    }
    CHECK_THROWS_AS(star_partial(ev.ctx(), A.symbols.require("alpha0"), m), BadIndex);
    (void)dm;
}

TEST_CASE("associativity: exact on polynomials, mod h^4 on rationals")
{
    auto A = build_K(2, 3);
    auto ev = exact_evaluator(A);
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 5; ++rep) {
        auto a = ev(random_poly(A, rng));
        auto b = ev(random_poly(A, rng));
        auto c = ev(random_poly(A, rng));
        auto lhs = star_mul(ev.ctx(), star_mul(ev.ctx(), a, b), c);
        auto rhs = star_mul(ev.ctx(), a, star_mul(ev.ctx(), b, c));
        CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), lhs, rhs)));
    }
    // rational triple
    auto a = ev(inverse(gen("f0")));
    auto b = ev(sum({gen("f1"), inverse(gen("f2"))}));
    auto c = ev(gen("f2"));
    auto lhs = star_mul(ev.ctx(), star_mul(ev.ctx(), a, b), c);
    auto rhs = star_mul(ev.ctx(), a, star_mul(ev.ctx(), b, c));
    CHECK(star_is_zero(ev.ctx(), star_sub(ev.ctx(), lhs, rhs)));
}

TEST_CASE("centrality of h, alphas, and the parity sums")
{
    std::mt19937_64 rng(29);
    auto A4 = build_K(4, 3);
    auto e4 = exact_evaluator(A4);
    auto x = e4.generator("x");
    for (int rep = 0; rep < 3; ++rep) {
        auto a = e4(random_poly(A4, rng));
        CHECK(star_is_zero(e4.ctx(), star_commutator(e4.ctx(), x, a)));
        CHECK(star_is_zero(e4.ctx(), star_commutator(e4.ctx(), e4.generator("alpha2"), a)));
        CHECK(star_is_zero(e4.ctx(), star_commutator(e4.ctx(), star_hbar(e4.ctx()), a)));
    }
    auto A5 = build_K(5, 3);
    auto e5 = exact_evaluator(A5);
    for (int rep = 0; rep < 3; ++rep) {
        auto a = e5(random_poly(A5, rng));
        CHECK(star_is_zero(e5.ctx(), star_commutator(e5.ctx(), e5.generator("x0"), a)));
        CHECK(star_is_zero(e5.ctx(), star_commutator(e5.ctx(), e5.generator("x1"), a)));
    }
}

TEST_CASE("classical limit: hbar = 0 slice of a star product is commutative")
{
    auto A = build_K(3, 3);
    auto ev = exact_evaluator(A);
    std::mt19937_64 rng(31);
    auto a = ev(random_poly(A, rng));
    auto b = ev(random_poly(A, rng));
    auto ab = star_mul(ev.ctx(), a, b);
    CHECK(ab.c[0] == a.c[0] * b.c[0]);
}

TEST_CASE("exact/modular backends agree on a star identity")
{
    auto A = build_K(3, 3);
    auto ev = exact_evaluator(A);
    // residual of [f0, f1] - h, evaluated both ways
    auto tree = sub(sub(prod({gen("f0"), gen("f1")}), prod({gen("f1"), gen("f0")})), gen("h"));
    auto exact = ev(tree);
    CHECK(star_is_zero(ev.ctx(), exact));
    JetSpace sp(A.model.ncoords(), A.order(), kDefaultPrime);
    auto pt = ModularPoint::sample(A.symbols.size(), kDefaultPrime, 77);
    Evaluator<JetCtx> jev(A, JetCtx{&A.model, &sp, &pt});
    CHECK(star_is_zero(jev.ctx(), jev(tree)));
    // and on a false identity both see the failure
    auto bad = sub(prod({gen("f0"), gen("f1")}), prod({gen("f1"), gen("f0")}));
    CHECK_FALSE(star_is_zero(ev.ctx(), ev(bad)));
    CHECK_FALSE(star_is_zero(jev.ctx(), jev(bad)));
}
