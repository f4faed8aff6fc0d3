#include <benchmark/benchmark.h>

#include <cstdint>

#include "ctes/curlicue.hpp"
#include "ctes/extractor.hpp"
#include "ctes/interferogram.hpp"
#include "ctes/planner.hpp"

namespace {

void BM_CurlicueIntensity(benchmark::State& state) {
  const ctes::CurlicueParams p(static_cast<std::uint32_t>(state.range(0)), 2);
  double z = 0.123;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctes::curlicue_intensity(z, p));
    z += 1e-7;
  }
}
BENCHMARK(BM_CurlicueIntensity)->Arg(3)->Arg(8)->Arg(32);

void BM_ExactTrial(benchmark::State& state) {
  const ctes::CurlicueParams p(3, 2);
  std::uint64_t ell = 3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctes::exact_intensity_at_trial(999999937ULL, ell, p));
    if (++ell > 30000) ell = 3;
  }
}
BENCHMARK(BM_ExactTrial);

void BM_RecordSampled(benchmark::State& state) {
  const ctes::CurlicueParams p(3, 2);
  const ctes::SpectralWindow w(330.84, 337.21);
  ctes::SamplingConfig cfg;
  cfg.samples_per_unit = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    const auto grid = ctes::build_grid(w, 111547.0, 111547, cfg);
    benchmark::DoNotOptimize(ctes::record(p, w, 111547.0, grid));
  }
}
BENCHMARK(BM_RecordSampled)->Arg(32)->Arg(1024);

// Whole pipeline, direct mode, N = p * q with p, q near sqrt(N).
void BM_FactorMethod1(benchmark::State& state) {
  const ctes::CurlicueParams p(3, 2);
  const ctes::SpectralWindow w(1.0, 2.0);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctes::factor(n, w, ctes::Method::method1, 1, p, ctes::SamplingConfig{}));
  }
}
BENCHMARK(BM_FactorMethod1)->Arg(111547)->Arg(1000036000099LL)->Unit(benchmark::kMillisecond);

void BM_PlanRange(benchmark::State& state) {
  const ctes::SpectralWindow w(1.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctes::sequence_plan_range(1, std::uint64_t{1} << 40, w, ctes::Method::method2));
  }
}
BENCHMARK(BM_PlanRange);

}  // namespace

BENCHMARK_MAIN();
