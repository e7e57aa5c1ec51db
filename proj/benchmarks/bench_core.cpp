#include <benchmark/benchmark.h>

#include "fracp/eigensolver.hpp"
#include "fracp/nonlinear.hpp"
#include "fracp/shapes.hpp"
#include "fracp/weight_classes.hpp"

using namespace fracp;

static void BM_Assemble(benchmark::State& state) {
    const Grid g = build_grid(-1.0, 1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
        benchmark::DoNotOptimize(E);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Assemble)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_Energy(benchmark::State& state) {
    const Grid g = build_grid(-1.0, 1.0, static_cast<int>(state.range(0)));
    const auto E = EnergyAssembly::assemble(g, 0.5, state.range(1) == 0 ? 2.0 : 2.5);
    const DiscreteFunction u = random_function(g, 3);
    for (auto _ : state) benchmark::DoNotOptimize(E.energy(u));
}
BENCHMARK(BM_Energy)->Args({128, 0})->Args({512, 0})->Args({128, 1})->Args({512, 1});

static void BM_Gradient(benchmark::State& state) {
    const Grid g = build_grid(-1.0, 1.0, static_cast<int>(state.range(0)));
    const auto E = EnergyAssembly::assemble(g, 0.5, 2.5);
    const DiscreteFunction u = random_function(g, 3);
    for (auto _ : state) benchmark::DoNotOptimize(E.gradient(u));
}
BENCHMARK(BM_Gradient)->Arg(128)->Arg(512);

static void BM_FirstEigenpair(benchmark::State& state) {
    const Grid g = build_grid(-1.0, 1.0, static_cast<int>(state.range(0)));
    const auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(first_eigenpair(E, WeightSpec::constant(1.0)));
}
BENCHMARK(BM_FirstEigenpair)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_MountainPass(benchmark::State& state) {
    const Grid g = build_grid(-1.0, 1.0, 64);
    const auto E = EnergyAssembly::assemble(g, 0.5, 2.0);
    ProblemSpec spec;
    spec.K = WeightSpec::constant(1.0);
    spec.q = 4.0;
    for (auto _ : state) benchmark::DoNotOptimize(mountain_pass(spec, E));
}
BENCHMARK(BM_MountainPass)->Unit(benchmark::kMillisecond);

static void BM_CheckClass(benchmark::State& state) {
    ClassQuery cq{WeightClass::Bq, 1, 0.5, 2.0, 2.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(check_class(WeightSpec::power(0.9), cq));
}
BENCHMARK(BM_CheckClass);

BENCHMARK_MAIN();
