// Serial reference against the OpenMP kernels.  Argument: worker count.

#include <benchmark/benchmark.h>

#include "dyn/census.hpp"
#include "dyn/constants.hpp"
#include "dyn/curves.hpp"

using namespace dyn;

static void BM_CountNQ1(benchmark::State& st) {
  const int workers = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(count_NQ1_direct(Label::P8_211, Int(100000000), workers));
}
BENCHMARK(BM_CountNQ1)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ValuationDistribution(benchmark::State& st) {
  const int workers = static_cast<int>(st.range(0));
  const HomTriple T = sym2_map_8211();
  const std::vector<Form> forms(T.H.begin(), T.H.end());
  for (auto _ : st) benchmark::DoNotOptimize(valuation_distribution(forms, Int(2), workers));
}
BENCHMARK(BM_ValuationDistribution)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_VolS1(benchmark::State& st) {
  const int workers = static_cast<int>(st.range(0));
  const HomTriple T = sym2_map_8211();
  for (auto _ : st) benchmark::DoNotOptimize(vol_S1(T, 0, 1u << 18, workers));
}
BENCHMARK(BM_VolS1)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Census(benchmark::State& st) {
  CensusOptions opt;
  opt.workers = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(census_deg1_hits(Int(5000), CensusMode::Exhaustive, opt));
}
BENCHMARK(BM_Census)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
