#include <benchmark/benchmark.h>

#include "lagr/strata.hpp"

using namespace lagr;

// The model constructor re-verifies every structure constant and the Jacobi
// identity, so this measures the exact-arithmetic oracle setup cost.
static void model_build_a2(benchmark::State& state) {
  RootSystem rs = build_root_system("A2");
  for (auto _ : state) {
    LieAlgebraModel model = build_lie_algebra(rs);
    benchmark::DoNotOptimize(model.dim_g());
  }
}
BENCHMARK(model_build_a2);

static void model_build_b2(benchmark::State& state) {
  RootSystem rs = build_root_system("B2");
  for (auto _ : state) {
    LieAlgebraModel model = build_lie_algebra(rs);
    benchmark::DoNotOptimize(model.dim_g());
  }
}
BENCHMARK(model_build_b2);

static void lagrangian_build_and_check_a2(benchmark::State& state) {
  RootSystem rs = build_root_system("A2");
  WeylGroup wg(rs);
  LieAlgebraModel model = build_lie_algebra(rs);
  BDTriple t = make_triple(rs, {0}, {1}, {1});
  Mat<QExt> v_rows = parity_witnesses(rs, t)[0];
  WeylElement v = wg.min_coset_reps(t.T).back();
  TorusElement m = identity_torus(rs.rank);
  for (auto _ : state) {
    DoubleSubspace l = build_lagrangian(model, t, v_rows, v, m);
    benchmark::DoNotOptimize(is_lagrangian_subalgebra(model, l));
  }
}
BENCHMARK(lagrangian_build_and_check_a2);

static void normalizer_report_a2(benchmark::State& state) {
  RootSystem rs = build_root_system("A2");
  WeylGroup wg(rs);
  LieAlgebraModel model = build_lie_algebra(rs);
  BDTriple t = make_triple(rs, {0}, {1}, {1});
  Mat<QExt> v_rows = parity_witnesses(rs, t)[0];
  WeylElement v = wg.min_coset_reps(t.T).back();
  TorusElement m = identity_torus(rs.rank);
  for (auto _ : state) {
    NormalizerReport rep = normalizer_in_diagonal(model, wg, t, v_rows, v, m);
    benchmark::DoNotOptimize(rep.formula.dim());
  }
}
BENCHMARK(normalizer_report_a2);

BENCHMARK_MAIN();
