#include <benchmark/benchmark.h>

#include "nctherm/oracles.hpp"
#include "nctherm/special_functions.hpp"
#include "nctherm/sweep.hpp"
#include "nctherm/thermo.hpp"

using namespace nctherm;

namespace {

PhysicalParams coupled() {
  PhysicalParams p;
  p.theta = 0.1;
  p.E1 = 0.1;
  return p;
}

void BM_Evaluate(benchmark::State& state) {
  const StatState st(1.2, 1.0, coupled());
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(st));
}
BENCHMARK(BM_Evaluate);

void BM_Classify(benchmark::State& state) {
  const PhysicalParams p = coupled();
  for (auto _ : state) benchmark::DoNotOptimize(gate::classify(1.2, p, 1.0));
}
BENCHMARK(BM_Classify);

void BM_LogGamma(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(x));
    x = x < 1e4 ? x * 1.37 : 0.5;
  }
}
BENCHMARK(BM_LogGamma);

void BM_HurwitzZeta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(hurwitz_zeta_scaled(19.5, 96.3));
}
BENCHMARK(BM_HurwitzZeta);

void BM_GammaSeries(benchmark::State& state) {
  const double q = state.range(0) / 100.0;
  const StatState st(q, 1.0, coupled());
  for (auto _ : state) benchmark::DoNotOptimize(oracle::gamma_weighted_series(st));
}
BENCHMARK(BM_GammaSeries)->Arg(105)->Arg(120)->Arg(135)->Unit(benchmark::kMillisecond);

void BM_Hilhorst(benchmark::State& state) {
  const double q = state.range(0) / 100.0;
  const StatState st(q, 1.0, coupled());
  for (auto _ : state) benchmark::DoNotOptimize(oracle::hilhorst_integral(st));
}
BENCHMARK(BM_Hilhorst)->Arg(105)->Arg(120)->Arg(135)->Unit(benchmark::kMillisecond);

void BM_SpectralTraceUnity(benchmark::State& state) {
  const StatState st(1.0, 1.0, PhysicalParams{});
  for (auto _ : state) benchmark::DoNotOptimize(oracle::spectral_trace(st));
}
BENCHMARK(BM_SpectralTraceUnity)->Unit(benchmark::kMicrosecond);

void BM_SweepFig1(benchmark::State& state) {
  const sweep::SweepSpec s = sweep::preset("fig1");
  for (auto _ : state) benchmark::DoNotOptimize(sweep::run(s));
}
BENCHMARK(BM_SweepFig1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
