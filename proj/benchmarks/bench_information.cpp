#include <benchmark/benchmark.h>

#include "gtomo/gtomo.hpp"

using namespace gtomo;

namespace {

PolyconvexSet void_cube() {
  auto b = [](double x0, double y0, double z0, double x1, double y1, double z1) {
    Vector lo(3), hi(3);
    lo << x0, y0, z0;
    hi << x1, y1, z1;
    return ConvexPolytope::box(lo, hi);
  };
  return PolyconvexSet({b(0, 0, 0, 1, 3, 3), b(2, 0, 0, 3, 3, 3), b(1, 0, 0, 2, 1, 3), b(1, 2, 0, 2, 3, 3),
                        b(1, 1, 0, 2, 2, 1), b(1, 1, 2, 2, 2, 3)});
}

}  // namespace

static void BM_MarginalProfile(benchmark::State& state) {
  const PolyconvexSet b(ConvexPolytope::cross_polytope(static_cast<int>(state.range(0))));
  const Vector u = Vector::Ones(state.range(0)).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(marginal_profile(b, u).total_mass());
}
BENCHMARK(BM_MarginalProfile)->Arg(2)->Arg(3)->Arg(4);

static void BM_ClosedForm(benchmark::State& state) {
  const auto vc = void_cube();
  for (auto _ : state) benchmark::DoNotOptimize(l1_fisher_piecewise(marginal_profile(vc, unit_axis(3, 0))).value);
}
BENCHMARK(BM_ClosedForm);

static void BM_SurfaceForm(benchmark::State& state) {
  const auto vc = void_cube();
  for (auto _ : state) benchmark::DoNotOptimize(l1_fisher_total(vc).value);
}
BENCHMARK(BM_SurfaceForm);

static void BM_Superadditivity(benchmark::State& state) {
  const auto vc = void_cube();
  for (auto _ : state) benchmark::DoNotOptimize(check_superadditivity(vc).total);
}
BENCHMARK(BM_Superadditivity);

static void BM_MonteCarlo(benchmark::State& state) {
  const auto vc = void_cube();
  OracleConfig cfg;
  cfg.n_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_volume(vc, cfg).estimate);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(1 << 17)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

static void BM_SliceCountIntegral(benchmark::State& state) {
  const auto vc = void_cube();
  OracleConfig cfg;
  cfg.grid_resolution = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nslice_integral(vc, 0, cfg));
}
BENCHMARK(BM_SliceCountIntegral)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_DirectionConstant(benchmark::State& state) {
  std::vector<Vector> dirs;
  const int m = static_cast<int>(state.range(0));
  for (int j = 0; j < m; ++j) dirs.push_back(unit_axis(m, j));
  for (auto _ : state) benchmark::DoNotOptimize(direction_constant(dirs));
}
BENCHMARK(BM_DirectionConstant)->Arg(8)->Arg(16)->Arg(20);
