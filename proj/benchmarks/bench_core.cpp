#include <benchmark/benchmark.h>

#include "pctlab/checker.hpp"
#include "pctlab/compile.hpp"
#include "pctlab/geometry.hpp"
#include "pctlab/witness.hpp"

namespace {

void bench_sigma_orbit(benchmark::State& state) {
    const auto& c = pctlab::GeometryConstants::defaults();
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto v = pctlab::iterate(c, pctlab::OrbitMap::Sigma, c.kappa(), n);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(bench_sigma_orbit)->Arg(16)->Arg(64)->Arg(256);

void bench_area_membership(benchmark::State& state) {
    const auto& c = pctlab::GeometryConstants::defaults();
    const pctlab::Vec2 v{pctlab::Rat(1, 2), pctlab::Rat(10)};
    for (auto _ : state) {
        bool inside = pctlab::area_contains(c, v, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(inside);
    }
}
BENCHMARK(bench_area_membership)->Arg(16)->Arg(64);

void bench_compile_counting(benchmark::State& state) {
    const auto& c = pctlab::GeometryConstants::defaults();
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        pctlab::FormulaFactory factory;
        auto compiled = pctlab::compile_counting(factory, c, n);
        benchmark::DoNotOptimize(compiled.formula);
    }
}
BENCHMARK(bench_compile_counting)->Arg(2)->Arg(8);

void bench_witness_counting(benchmark::State& state) {
    const auto& c = pctlab::GeometryConstants::defaults();
    const auto n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        auto mc = pctlab::model_counting(c, n);
        benchmark::DoNotOptimize(mc.state_count());
    }
}
BENCHMARK(bench_witness_counting)->Arg(2)->Arg(8)->Arg(32);

void bench_check_counting(benchmark::State& state) {
    const auto& c = pctlab::GeometryConstants::defaults();
    const auto n = static_cast<unsigned>(state.range(0));
    pctlab::FormulaFactory factory;
    auto compiled = pctlab::compile_counting(factory, c, n);
    auto mc = pctlab::model_counting(c, n);
    for (auto _ : state) {
        pctlab::Checker checker(mc);
        bool sat = checker.holds(compiled.formula, mc.start_index());
        benchmark::DoNotOptimize(sat);
    }
}
BENCHMARK(bench_check_counting)->Arg(2)->Arg(8);

} // namespace

BENCHMARK_MAIN();
