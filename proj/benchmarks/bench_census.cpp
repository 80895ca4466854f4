#include <benchmark/benchmark.h>

#include "lagr/strata.hpp"

using namespace lagr;

static void census_strata_a2(benchmark::State& state) {
  RootSystem rs = build_root_system("A2");
  WeylGroup wg(rs);
  LieAlgebraModel model = build_lie_algebra(rs);
  for (auto _ : state) {
    auto entries = stratum_census(model, wg);
    benchmark::DoNotOptimize(entries.size());
  }
}
BENCHMARK(census_strata_a2);

static void census_components_b2(benchmark::State& state) {
  RootSystem rs = build_root_system("B2");
  WeylGroup wg(rs);
  LieAlgebraModel model = build_lie_algebra(rs);
  for (auto _ : state) {
    auto comps = irreducible_components(model, wg);
    benchmark::DoNotOptimize(comps.size());
  }
}
BENCHMARK(census_components_b2);

static void census_json_a2(benchmark::State& state) {
  RootSystem rs = build_root_system("A2");
  WeylGroup wg(rs);
  LieAlgebraModel model = build_lie_algebra(rs);
  for (auto _ : state) {
    std::string text = census_json(model, wg);
    benchmark::DoNotOptimize(text.size());
  }
}
BENCHMARK(census_json_a2);

BENCHMARK_MAIN();
