#include <benchmark/benchmark.h>

#include "qp/climit.hpp"
#include "qp/discrete.hpp"
#include "qp/hamiltonian.hpp"
#include "qp/weyl.hpp"

using namespace qp;

namespace {

void BM_StarCommutatorExact(benchmark::State& state)
{
    auto A = build_K(static_cast<int>(state.range(0)), 3);
    auto ev = exact_evaluator(A);
    auto H = ev(hamiltonian_H0(A));
    auto f0 = ev.generator("f0");
    for (auto _ : state)
        benchmark::DoNotOptimize(star_commutator(ev.ctx(), H, f0));
}
BENCHMARK(BM_StarCommutatorExact)->Arg(2)->Arg(5)->Arg(7);

void BM_StarCommutatorJet(benchmark::State& state)
{
    auto A = build_K(static_cast<int>(state.range(0)), 3);
    JetSpace sp(A.model.ncoords(), 3, kDefaultPrime);
    auto pt = ModularPoint::sample(A.symbols.size(), kDefaultPrime, 7);
    Evaluator<JetCtx> ev(A, JetCtx{&A.model, &sp, &pt});
    auto H = ev(hamiltonian_H0(A));
    auto f0 = ev.generator("f0");
    for (auto _ : state)
        benchmark::DoNotOptimize(star_commutator(ev.ctx(), H, f0));
}
BENCHMARK(BM_StarCommutatorJet)->Arg(2)->Arg(5)->Arg(7);

void BM_BraidIdentityModular(benchmark::State& state)
{
    auto A = build_K(static_cast<int>(state.range(0)), 3);
    auto items = weyl_braid_identities(A);
    RunOptions opt;
    opt.mode = RunOptions::Mode::Modular;
    opt.trials = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_identities("bench", A.l, items, opt));
}
BENCHMARK(BM_BraidIdentityModular)->Arg(3)->Arg(5);

void BM_MPolyGcd(benchmark::State& state)
{
    const int arity = 6;
    auto x = MPoly::symbol(arity, 0), y = MPoly::symbol(arity, 1), z = MPoly::symbol(arity, 2);
    auto common = x * y + z * z + MPoly::constant(arity, 3);
    auto a = common * (x + y) * (x + y);
    auto b = common * (x - z);
    for (auto _ : state)
        benchmark::DoNotOptimize(mpoly_gcd(a, b));
}
BENCHMARK(BM_MPolyGcd);

void BM_RatFnSum(benchmark::State& state)
{
    const int arity = 6;
    RatFn one_over(MPoly::constant(arity, 1), MPoly::symbol(arity, 0) + MPoly::symbol(arity, 1));
    RatFn other(MPoly::symbol(arity, 2), MPoly::symbol(arity, 0));
    for (auto _ : state) {
        auto s = one_over * one_over + other;
        benchmark::DoNotOptimize(s.den());
    }
}
BENCHMARK(BM_RatFnSum);

void BM_TrajectorySteps(benchmark::State& state)
{
    auto A = build_K(2, 3);
    TrajectoryOptions opt;
    opt.steps = static_cast<int>(state.range(0));
    opt.seed = 5;
    for (auto _ : state)
        benchmark::DoNotOptimize(discrete_trajectory(A, opt));
}
BENCHMARK(BM_TrajectorySteps)->Arg(10)->Arg(50);

void BM_EpsLemmaModular(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(
            run_climit_modular("lemma-psi", 3, 3, 3, kDefaultPrime, 11, false));
}
BENCHMARK(BM_EpsLemmaModular);

} // namespace

BENCHMARK_MAIN();
