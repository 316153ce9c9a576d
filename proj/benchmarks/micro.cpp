// Microbenchmarks for the hot paths: the dual subproblem (called once per
// iteration), the scalarization, nondominated filtering, and one full solve.

#include "momograd/bench.hpp"
#include "momograd/core.hpp"
#include "momograd/rng.hpp"
#include "momograd/solver.hpp"
#include "momograd/subproblem.hpp"

#include <benchmark/benchmark.h>

using namespace momograd;

namespace {

Jacobian random_jacobian(SplitMix64& rng, int m, int n) {
  Jacobian jf(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) jf(i, j) = rng.uniform(-10, 10);
  return jf;
}

void bm_dual(benchmark::State& state) {
  SplitMix64 rng(1);
  const int m = static_cast<int>(state.range(0));
  const Jacobian jf = random_jacobian(rng, m, 20);
  for (auto _ : state) benchmark::DoNotOptimize(solve_dual(jf));
}
BENCHMARK(bm_dual)->Arg(2)->Arg(3)->Arg(8);

void bm_psi(benchmark::State& state) {
  SplitMix64 rng(2);
  const Jacobian jf = random_jacobian(rng, 4, 100);
  Vector d(100);
  for (int i = 0; i < 100; ++i) d[i] = rng.uniform(-1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(psi(jf, d));
}
BENCHMARK(bm_psi);

void bm_pareto_filter(benchmark::State& state) {
  SplitMix64 rng(3);
  std::vector<Vector> points;
  for (int i = 0; i < state.range(0); ++i) {
    Vector p(2);
    p[0] = rng.uniform(0, 1);
    p[1] = rng.uniform(0, 1);
    points.push_back(p);
  }
  for (auto _ : state) benchmark::DoNotOptimize(pareto_filter(points));
}
BENCHMARK(bm_pareto_filter)->Arg(100)->Arg(1000);

void bm_solve_quadratic(benchmark::State& state) {
  const auto problem = make_problem("JOS1a");
  const auto x0 = sample_starts(problem, 1, 7)[0];
  SolverConfig cfg;
  cfg.method = Method::MmgI;
  for (auto _ : state) benchmark::DoNotOptimize(solve(problem, x0, cfg));
}
BENCHMARK(bm_solve_quadratic);

}  // namespace

BENCHMARK_MAIN();
