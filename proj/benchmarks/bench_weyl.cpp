#include <benchmark/benchmark.h>

#include "lagr/weyl.hpp"

using namespace lagr;

static void weyl_enumerate_a3(benchmark::State& state) {
  RootSystem rs = build_root_system("A3");
  for (auto _ : state) {
    WeylGroup wg(rs);
    benchmark::DoNotOptimize(wg.elements().size());
  }
}
BENCHMARK(weyl_enumerate_a3);

static void weyl_enumerate_b3(benchmark::State& state) {
  RootSystem rs = build_root_system("B3");
  for (auto _ : state) {
    WeylGroup wg(rs);
    benchmark::DoNotOptimize(wg.elements().size());
  }
}
BENCHMARK(weyl_enumerate_b3);

static void weyl_coset_reps_a3(benchmark::State& state) {
  RootSystem rs = build_root_system("A3");
  WeylGroup wg(rs);
  for (auto _ : state) {
    auto reps = wg.min_coset_reps({0, 2});
    benchmark::DoNotOptimize(reps.size());
  }
}
BENCHMARK(weyl_coset_reps_a3);

static void weyl_products_a3(benchmark::State& state) {
  RootSystem rs = build_root_system("A3");
  WeylGroup wg(rs);
  const auto& els = wg.elements();
  for (auto _ : state) {
    for (const WeylElement& a : els) {
      WeylElement p = wg.product(a, wg.longest());
      benchmark::DoNotOptimize(p.length());
    }
  }
}
BENCHMARK(weyl_products_a3);

BENCHMARK_MAIN();
