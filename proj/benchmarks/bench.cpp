#include <benchmark/benchmark.h>

#include <cmath>

#include "wente/experiments.hpp"
#include "wente/halfplane.hpp"
#include "wente/norms.hpp"

using namespace wente;

static void BM_DirichletSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = make_polar_grid(n, 2 * n);
  ScalarField rhs = sample(g, [](double x, double y) { return std::exp(x) * (1 + y); });
  for (auto _ : state) {
    ScalarField u = solve_dirichlet_disk(rhs);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DirichletSolve)->RangeMultiplier(2)->Range(32, 512)->Complexity();

static void BM_ConjugateReduction(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = make_polar_grid(n, 2 * n);
  ScalarField a = sample(g, [](double x, double) { return x; });
  ScalarField b = sample(g, [](double, double y) { return y; });
  for (auto _ : state) {
    ConjugateSolution s = conjugate_reduction(a, b);
    benchmark::DoNotOptimize(s.w.values().data());
  }
}
BENCHMARK(BM_ConjugateReduction)->Arg(64)->Arg(128)->Arg(256);

static void BM_TraceRepresentation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = make_halfplane_grid(2 * n, n, 1.0, 1.0, true);
  FieldPair p = build_pair({Family::LinfBlowup, 0.75, 1e-3}, g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(represent_trace(p.a, p.b, 0.0));
  }
}
BENCHMARK(BM_TraceRepresentation)->Arg(64)->Arg(128)->Arg(256);

static void BM_GagliardoSeminorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto s = make_segment_grid(n, 1.0, true);
  std::vector<double> v(s->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::tanh(10 * s->nodes[i]);
  BoundaryTrace t(s, std::move(v));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gagliardo_h12(t));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GagliardoSeminorm)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

static void BM_LorentzNorm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto g = make_polar_grid(n, 2 * n);
  ScalarField f = sample(g, [](double x, double y) { return std::sin(7 * x) * y; });
  for (auto _ : state) {
    benchmark::DoNotOptimize(lorentz_l21(f));
  }
}
BENCHMARK(BM_LorentzNorm)->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
