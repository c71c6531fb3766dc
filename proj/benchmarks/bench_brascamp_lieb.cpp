#include <benchmark/benchmark.h>

#include <random>

#include "gtomo/gtomo.hpp"

using namespace gtomo;

static void BM_ValidateDatum(benchmark::State& state) {
  const auto d = BLDatum::coordinate_hyperplanes(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_datum(d).status);
}
BENCHMARK(BM_ValidateDatum)->Arg(3)->Arg(5);

// no John shortcut: the optimizer runs every start
static void BM_MgJohn(benchmark::State& state) {
  const auto d = BLDatum::coordinate_hyperplanes(static_cast<int>(state.range(0)));
  MgOptions opts;
  opts.john_shortcut = false;
  for (auto _ : state) benchmark::DoNotOptimize(mg_maximize(d, opts).value);
}
BENCHMARK(BM_MgJohn)->Arg(3)->Arg(4)->Arg(6);

static void BM_MgRandomLines(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  std::vector<Vector> dirs;
  for (int j = 0; j < n + 1; ++j) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = g(rng);
    dirs.push_back(v.normalized());
  }
  const auto d = BLDatum::lines(dirs, std::vector<double>(n + 1, double(n) / (n + 1)));
  for (auto _ : state) benchmark::DoNotOptimize(mg_optimize(d));
}
BENCHMARK(BM_MgRandomLines)->Arg(2)->Arg(3)->Arg(4);
