#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace gtomo;
using fixtures::box;
using fixtures::vec;

TEST_CASE("slice volumes") {
  CHECK(slice_volume(fixtures::unit_cube(), unit_axis(3, 0), 0.5) == doctest::Approx(1.0));
  const auto vc = fixtures::void_cube();
  CHECK(slice_volume(vc, unit_axis(3, 0), 1.5) == doctest::Approx(8.0));
  CHECK(slice_volume(vc, unit_axis(3, 0), 0.5) == doctest::Approx(9.0));
  CHECK(slice_volume(vc, unit_axis(3, 1), 2.5) == doctest::Approx(9.0));
  CHECK(slice_volume(vc, unit_axis(3, 0), 3.5) == 0.0);
  // the slice at a shared face counts the face once
  CHECK(slice_volume(vc, unit_axis(3, 0), 1.0) == doctest::Approx(9.0));
}

TEST_CASE("uniform marginal of the cube") {
  const auto f = marginal_profile(fixtures::unit_cube(), unit_axis(3, 0));
  CHECK(f.breakpoints() == std::vector<double>{0.0, 1.0});
  CHECK(f(0.3) == doctest::Approx(1.0));
  CHECK(f.left_limit(0) == 0.0);
  CHECK(f.right_limit(0) == doctest::Approx(1.0));
  CHECK(f.left_limit(1) == doctest::Approx(1.0));
  CHECK(f.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("void cube marginal") {
  const auto f = marginal_profile(fixtures::void_cube(), unit_axis(3, 0));
  CHECK(f.breakpoints().size() == 4);
  CHECK(f(0.5) == doctest::Approx(9.0 / 26));
  CHECK(f(1.5) == doctest::Approx(8.0 / 26));
  CHECK(f(2.5) == doctest::Approx(9.0 / 26));
  CHECK(f.right_limit(1) == doctest::Approx(8.0 / 26).epsilon(1e-12));
  CHECK(f.left_limit(1) == doctest::Approx(9.0 / 26).epsilon(1e-12));
  CHECK(f.integrate_trapezoid(256) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("triangle marginal is linear and decreasing") {
  const PolyconvexSet s(ConvexPolytope::standard_simplex(2));
  const auto f = marginal_profile(s, unit_axis(2, 0));
  CHECK(f.breakpoints() == std::vector<double>{0.0, 1.0});
  for (double t : {0.1, 0.4, 0.77}) CHECK(f(t) == doctest::Approx(2 * (1 - t)).epsilon(1e-12));
  CHECK(f.right_limit(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.left_limit(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(f.find_non_monotone_interval().has_value());
}

TEST_CASE("one-sided limits of the octahedron are exact") {
  const auto f = marginal_profile(fixtures::cross(3), unit_axis(3, 0));
  // density 3/2 (1-|t|)^2
  const auto& bp = f.breakpoints();
  const auto mid = std::find_if(bp.begin(), bp.end(), [](double t) { return std::abs(t) < 1e-12; });
  REQUIRE(mid != bp.end());
  const auto i = static_cast<std::size_t>(mid - bp.begin());
  CHECK(std::abs(f.left_limit(i) - 1.5) < 1e-10);
  CHECK(std::abs(f.right_limit(i) - 1.5) < 1e-10);
  CHECK(f(0.5) == doctest::Approx(1.5 * 0.25).epsilon(1e-12));
}

TEST_CASE("marginals are split at interior extrema") {
  // cube along its main diagonal: the middle piece peaks in its interior
  const auto cube = fixtures::unit_cube();
  const Vector u = Vector::Ones(3).normalized();
  const auto f = marginal_profile(cube, u);
  CHECK_FALSE(f.find_non_monotone_interval().has_value());
  CHECK(f.total_mass() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(f(std::sqrt(3.0) / 2) == doctest::Approx(slice_volume(cube, u, std::sqrt(3.0) / 2)));
}

TEST_CASE("marginal mass on random unions") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const auto u = fixtures::random_union(3, rng);
    const auto f = marginal_profile(u, unit_axis(3, trial % 3));
    CHECK(f.integrate_trapezoid(256) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("slices of convex pieces satisfy the Brunn concavity inequality") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = fixtures::random_polytope(3, rng);
    const PolyconvexSet s(p);
    Vector u = Vector::Random(3).normalized();
    const auto [lo, hi] = p.support_interval(u);
    for (int k = 0; k < 10; ++k) {
      const double t1 = lo + (hi - lo) * unit(rng), t2 = lo + (hi - lo) * unit(rng);
      const double mid = std::sqrt(slice_volume(s, u, 0.5 * (t1 + t2)));
      const double avg = 0.5 * (std::sqrt(slice_volume(s, u, t1)) + std::sqrt(slice_volume(s, u, t2)));
      CHECK(mid >= avg - 1e-8);
    }
  }
}

TEST_CASE("maximal slices") {
  CHECK(max_slice(ConvexPolytope::box(Vector::Zero(3), Vector::Ones(3)), unit_axis(3, 0)) ==
        doctest::Approx(1.0));
  const auto best = max_slice_at(ConvexPolytope::cross_polytope(3), unit_axis(3, 2));
  CHECK(best.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(best.position(0)) < 1e-6);
  CHECK_THROWS_AS(max_slice(ConvexPolytope::cross_polytope(3), Matrix::Identity(3, 3)), Error);
}

TEST_CASE("maximal slice of a simplex matches a dense grid") {
  // regular simplex: hull of the standard basis in R^4 projected to its plane
  PointList pts;
  const Vector c = Vector::Constant(4, 0.25);
  Matrix plane = kernel::orthogonal_complement(Vector(Vector::Ones(4).normalized()));
  for (int i = 0; i < 4; ++i) pts.push_back(plane.transpose() * (unit_axis(4, i) - c));
  const auto simplex = ConvexPolytope::from_vertices(pts);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  Vector u(3);
  for (int i = 0; i < 3; ++i) u(i) = g(rng);
  u.normalize();

  const auto [lo, hi] = simplex.support_interval(u);
  double grid = 0.0;
  const PolyconvexSet s(simplex);
  for (int k = 0; k <= 10000; ++k) grid = std::max(grid, slice_volume(s, u, lo + (hi - lo) * k / 10000.0));
  const double found = max_slice(simplex, u);
  CHECK(found >= grid * (1 - 1e-6));
  CHECK(std::abs(found - grid) <= 1e-6 * grid);
}

TEST_CASE("maximal slice dominates random slices") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto p = fixtures::random_polytope(3, rng, 15);
  const Vector u = Vector::Random(3).normalized();
  const double best = max_slice(p, u);
  const auto [lo, hi] = p.support_interval(u);
  for (int k = 0; k < 100; ++k) {
    CHECK(best >= slice_volume(PolyconvexSet(p), u, lo + (hi - lo) * unit(rng)) - 1e-12);
  }
}

TEST_CASE("maximal sections by lower-dimensional flats") {
  // slices of the cube by lines parallel to e_3 all have length 1
  Matrix e(3, 2);
  e << 1, 0, 0, 1, 0, 0;
  CHECK(max_slice(ConvexPolytope::box(Vector::Zero(3), Vector::Ones(3)), e) == doctest::Approx(1.0));
  // octahedron: longest chord parallel to e_3 has length 2 through the origin
  const auto best = max_slice_at(ConvexPolytope::cross_polytope(3), e);
  CHECK(best.value == doctest::Approx(2.0).epsilon(1e-7));
  // tilted plane pair in R^4
  const auto b4 = ConvexPolytope::cross_polytope(4);
  Matrix f = Matrix::Zero(4, 2);
  f(0, 0) = 1;
  f(1, 1) = 1;
  // section by x1 = s1, x2 = s2 is a square |x3| + |x4| <= 1 - |s1| - |s2|
  CHECK(max_slice(b4, f) == doctest::Approx(2.0).epsilon(1e-7));
}

TEST_CASE("line interval counts") {
  CHECK(line_interval_count(fixtures::unit_cube(), 0, vec({0.5, 0.5})) == 1);
  CHECK(line_interval_count(fixtures::void_cube(), 0, vec({1.5, 1.5})) == 2);
  CHECK(line_interval_count(fixtures::void_cube(), 0, vec({0.5, 1.5})) == 1);
  CHECK(line_interval_count(fixtures::two_cubes(), 0, vec({0.5, 0.5})) == 2);
  CHECK(line_interval_count(fixtures::two_cubes(), 0, vec({1.5, 0.5})) == 0);
  // touching pieces form one chord
  const PolyconvexSet touching({box({0, 0}, {1, 1}), box({1, 0}, {2, 1})});
  CHECK(line_interval_count(touching, 0, vec({0.5})) == 1);
}

TEST_CASE("midpoint samples avoid breakpoints") {
  const auto s = midpoint_samples(fixtures::void_cube(), unit_axis(3, 0));
  CHECK(s.positions == std::vector<double>{0.5, 1.5, 2.5});
  CHECK(s.areas[0] == doctest::Approx(9.0));
  CHECK(s.areas[1] == doctest::Approx(8.0));
  s.validate();
  SliceSamples bad{unit_axis(2, 0), {1.0, 0.5}, {1.0, 1.0}};
  CHECK_THROWS_AS(bad.validate(), Error);
}
