#include <benchmark/benchmark.h>

#include "kwp/properties.hpp"

namespace {

const kwp::KwPParams kInteger{1.5, 1.5, 2.0, 3.0};
const kwp::KwPParams kFractional{1.5, 3.0, 1.5, 5.0};

void BM_MomentSeries(benchmark::State& state) {
  const auto& p = state.range(0) == 0 ? kInteger : kFractional;
  for (auto _ : state) benchmark::DoNotOptimize(kwp::moment_series(1, p));
}
BENCHMARK(BM_MomentSeries)->Arg(0)->Arg(1);

void BM_MomentQuadrature(benchmark::State& state) {
  const auto& p = state.range(0) == 0 ? kInteger : kFractional;
  for (auto _ : state) benchmark::DoNotOptimize(kwp::moment_quadrature(1, p));
}
BENCHMARK(BM_MomentQuadrature)->Arg(0)->Arg(1);

void BM_MgfSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kwp::mgf_series(-1.0, kInteger));
}
BENCHMARK(BM_MgfSeries);

void BM_MgfQuadrature(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kwp::mgf_quadrature(-1.0, kInteger));
}
BENCHMARK(BM_MgfQuadrature);

void BM_Weights(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kwp::weights(kFractional));
}
BENCHMARK(BM_Weights);

void BM_LMoments(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kwp::l_moments(4, kInteger));
}
BENCHMARK(BM_LMoments);

}  // namespace
