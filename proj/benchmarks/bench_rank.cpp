#include <benchmark/benchmark.h>

#include "lagr/poisson.hpp"

using namespace lagr;

static void rank_grid_a1(benchmark::State& state) {
  RootSystem rs = build_root_system("A1");
  WeylGroup wg(rs);
  for (auto _ : state) {
    auto rows = rank_table(wg, 0xBD);
    benchmark::DoNotOptimize(rows.size());
  }
}
BENCHMARK(rank_grid_a1);

static void rank_grid_a2(benchmark::State& state) {
  RootSystem rs = build_root_system("A2");
  WeylGroup wg(rs);
  for (auto _ : state) {
    auto rows = rank_table(wg, 0xBD);
    benchmark::DoNotOptimize(rows.size());
  }
}
BENCHMARK(rank_grid_a2);

static void rank_correction_space_a2(benchmark::State& state) {
  RootSystem rs = build_root_system("A2");
  WeylGroup wg(rs);
  BDTriple t = make_triple(rs, {0}, {0}, {0});
  WeylElement v = wg.parse("s1s2");
  for (auto _ : state) {
    XSpace x = x_space(rs, wg, t, v);
    benchmark::DoNotOptimize(x.dim());
  }
}
BENCHMARK(rank_correction_space_a2);

static void rank_orbit_pair_a2(benchmark::State& state) {
  RootSystem rs = build_root_system("A2");
  WeylGroup wg(rs);
  LieAlgebraModel model = build_lie_algebra(rs);
  BDTriple t = make_triple(rs, {}, {}, {});
  Mat<QExt> v_rows(rs.rank, 2 * rs.rank);
  for (int i = 0; i < rs.rank; ++i) {
    v_rows(i, i) = QExt(1);
    v_rows(i, rs.rank + i) = QExt(1);
  }
  OrbitLabel o;
  o.kind = OrbitKind::GDelta;
  o.triple = t;
  o.v_rows = v_rows;
  o.v = wg.longest();
  o.m = identity_torus(rs.rank);
  OrbitLabel o_prime;
  o_prime.kind = OrbitKind::BB;
  o_prime.triple = t;
  o_prime.v_rows = v_rows;
  o_prime.w = wg.longest();
  o_prime.v = wg.longest();
  for (auto _ : state) {
    PoissonRank pr = pi0_rank(model, wg, o, o_prime);
    benchmark::DoNotOptimize(pr.rank);
  }
}
BENCHMARK(rank_orbit_pair_a2);

BENCHMARK_MAIN();
