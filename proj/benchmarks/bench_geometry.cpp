#include <benchmark/benchmark.h>

#include <random>

#include "gtomo/gtomo.hpp"

using namespace gtomo;

namespace {

PointList cloud(int n, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  PointList pts;
  for (int k = 0; k < points; ++k) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x(i) = g(rng);
    pts.push_back(x);
  }
  return pts;
}

std::vector<ConvexPolytope> boxes(int count) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> start(0, 8), len(2, 6);
  std::vector<ConvexPolytope> out;
  for (int k = 0; k < count; ++k) {
    Vector lo(3), hi(3);
    for (int i = 0; i < 3; ++i) {
      lo(i) = 0.25 * start(rng);
      hi(i) = lo(i) + 0.25 * len(rng);
    }
    out.push_back(ConvexPolytope::box(lo, hi));
  }
  return out;
}

}  // namespace

static void BM_HullFromPoints(benchmark::State& state) {
  const auto pts = cloud(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ConvexPolytope::from_vertices(pts).volume());
}
BENCHMARK(BM_HullFromPoints)->Args({3, 20})->Args({3, 60})->Args({4, 20});

static void BM_CrossPolytope(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ConvexPolytope::cross_polytope(n).volume());
}
BENCHMARK(BM_CrossPolytope)->DenseRange(2, 5);

static void BM_UnionVolume(benchmark::State& state) {
  const PolyconvexSet set(boxes(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(union_volume(set));
}
BENCHMARK(BM_UnionVolume)->DenseRange(2, 8, 2);

static void BM_UnionSurface(benchmark::State& state) {
  const PolyconvexSet set(boxes(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(union_surface_area(set));
}
BENCHMARK(BM_UnionSurface)->DenseRange(2, 8, 2);

static void BM_SliceVolume(benchmark::State& state) {
  const PolyconvexSet set(ConvexPolytope::from_vertices(cloud(3, 40, 2)));
  const Vector u = Vector::Ones(3).normalized();
  for (auto _ : state) benchmark::DoNotOptimize(slice_volume(set, u, 0.1));
}
BENCHMARK(BM_SliceVolume);

static void BM_MaxSlice(benchmark::State& state) {
  const auto p = ConvexPolytope::from_vertices(cloud(3, 30, 3));
  const int r = static_cast<int>(state.range(0));
  const Matrix basis = Matrix::Identity(3, r);
  for (auto _ : state) benchmark::DoNotOptimize(max_slice(p, basis));
}
BENCHMARK(BM_MaxSlice)->Arg(1)->Arg(2);
