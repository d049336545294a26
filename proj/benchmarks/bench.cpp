// Microbenchmarks for the hot paths: the oscillation sweep, the exact
// partition bracket, ultrafilter enumeration, and operator application.
// Not part of the test suite; run mnc_bench directly.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "mnc/classical.hpp"
#include "mnc/darbo.hpp"
#include "mnc/expr.hpp"
#include "mnc/family.hpp"
#include "mnc/omega.hpp"
#include "mnc/wallman.hpp"

namespace {

void BM_OmegaPowerFamily(benchmark::State& state) {
    auto grid = mnc::make_grid(0.0, 1.0, 2e-3);
    auto fam = mnc::parametric_family(grid, mnc::parse_family("t^n"),
                                      std::uint64_t(state.range(0)), true, "powers");
    mnc::OmegaConfig cfg;
    cfg.threads = 1;
    for (auto _ : state) {
        auto rep = mnc::noncompactness(fam, cfg);
        benchmark::DoNotOptimize(rep.omega);
    }
}
BENCHMARK(BM_OmegaPowerFamily)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_KuratowskiExact(benchmark::State& state) {
    auto grid = mnc::make_grid(0.0, 1.0, 1e-2);
    std::vector<mnc::SampledFunction> members;
    for (int n = 1; n <= state.range(0); ++n) {
        mnc::SampledFunction f;
        f.domain = grid;
        f.label = "m" + std::to_string(n);
        for (double t : grid->points) f.values.push_back(t * n / double(state.range(0)));
        members.push_back(std::move(f));
    }
    for (auto _ : state) {
        double b = mnc::kuratowski_exact(members, 3);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_KuratowskiExact)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_UltrafilterEnumeration(benchmark::State& state) {
    auto space = mnc::wallman::make_space(int(state.range(0)));
    for (auto _ : state) {
        auto filters = mnc::wallman::enumerate_ultrafilters(space);
        benchmark::DoNotOptimize(filters.size());
    }
}
BENCHMARK(BM_UltrafilterEnumeration)->Arg(4)->Arg(5);

void BM_ApplyOperator(benchmark::State& state) {
    auto grid = mnc::make_grid(0.0, 1.0, 1e-3);
    auto op = mnc::make_operator(mnc::OperatorKind::Fredholm, grid, "t", "exp(0-t*s)", "x", 0.4,
                                 1.0);
    mnc::SampledFunction x;
    x.domain = grid;
    x.label = "x0";
    for (double t : grid->points) x.values.push_back(t);
    for (auto _ : state) {
        auto y = mnc::apply_operator(op, x);
        benchmark::DoNotOptimize(y.values.back());
    }
}
BENCHMARK(BM_ApplyOperator)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
