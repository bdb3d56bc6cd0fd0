// Serial reference versus OpenMP kernels on the two parallel hot spots:
// the weak-hyperbolicity subset scan and point sampling.

#include "mam/config.hpp"
#include "mam/config_io.hpp"
#include "mam/variety.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

mam::Configuration curve(int m, int n) {
  std::vector<std::vector<mam::cplx>> l;
  for (int j = 0; j < n; ++j) {
    std::vector<mam::cplx> v;
    for (int k = 1; k <= m; ++k) v.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k * j / n));
    l.push_back(v);
  }
  return mam::make_classical(l);
}

void BM_WeakHyperbolicitySerial(benchmark::State& st) {
  const mam::Configuration cfg = curve(2, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mam::check_weak_hyperbolicity_serial(cfg));
}

void BM_WeakHyperbolicityParallel(benchmark::State& st) {
  const mam::Configuration cfg = curve(2, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(mam::check_weak_hyperbolicity(cfg));
}

void BM_SampleSerial(benchmark::State& st) {
  const mam::Configuration cfg = mam::load_config(std::string(MAM_CONFIG_DIR) + "/mixed_general_m3.json");
  for (auto _ : st) benchmark::DoNotOptimize(mam::sample_points_serial(cfg, static_cast<int>(st.range(0)), 1));
}

void BM_SampleParallel(benchmark::State& st) {
  const mam::Configuration cfg = mam::load_config(std::string(MAM_CONFIG_DIR) + "/mixed_general_m3.json");
  for (auto _ : st) benchmark::DoNotOptimize(mam::sample_points(cfg, static_cast<int>(st.range(0)), 1));
}

}  // namespace

BENCHMARK(BM_WeakHyperbolicitySerial)->Arg(9)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WeakHyperbolicityParallel)->Arg(9)->Arg(13)->Arg(17)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SampleSerial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleParallel)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
