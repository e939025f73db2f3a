// Serial reference vs OpenMP map on the two hot loops: per-sample identity
// checks and quadrature node sweeps. On a single core the difference is the
// OpenMP scheduling overhead.

#include <benchmark/benchmark.h>

#include "distgeom/checks.hpp"
#include "distgeom/quadrature.hpp"
#include "distgeom/scenarios.hpp"

using namespace distgeom;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void BM_VerifyCodazzi(benchmark::State& st) {
  const auto s = make_scenario("einstein-s3xt2");
  VerifyOptions opt;
  opt.points = 64;
  opt.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(run_verify(s, {"codazzi"}, opt));
  st.SetLabel(st.range(0) == 0 ? "serial" : "omp");
}

void BM_VerifyWalczak(benchmark::State& st) {
  const auto s = make_scenario("warped-torus");
  VerifyOptions opt;
  opt.points = 64;
  opt.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(run_verify(s, {"walczak"}, opt));
  st.SetLabel(st.range(0) == 0 ? "serial" : "omp");
}

void BM_StokesHopf(benchmark::State& st) {
  const auto s = make_scenario("hopf-s3");
  const QuadratureGrid grid(s.param, {24, 24, 24});
  const EndoField P = s.pair.p1 + s.pair.p2;
  const VectorField X = s.random_field(42);
  for (auto _ : st)
    benchmark::DoNotOptimize(stokes_check(P, s.chart, X, grid, 1e-6, {}, exec_of(st)).integral);
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(grid.size()));
  st.SetLabel(st.range(0) == 0 ? "serial" : "omp");
}

void BM_FormulaWarped(benchmark::State& st) {
  const auto s = make_scenario("warped-torus");
  const QuadratureGrid grid(s.param, {32, 32});
  for (auto _ : st)
    benchmark::DoNotOptimize(integral_formula_check(s.pair, s.chart, grid, {}, exec_of(st)).integral);
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(grid.size()));
  st.SetLabel(st.range(0) == 0 ? "serial" : "omp");
}

}  // namespace

BENCHMARK(BM_VerifyCodazzi)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyWalczak)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StokesHopf)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FormulaWarped)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
