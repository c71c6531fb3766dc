#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace gtomo;
using fixtures::vec;

TEST_CASE("volume lower bound from maximal slices") {
  CHECK(volume_lower_bound({1, 1, 1}, BLDatum::axes(3), 0.0) == doctest::Approx(std::exp(-1.5)));
  CHECK(volume_lower_bound({2, 2, 2}, BLDatum::axes(3), 0.0) ==
        doctest::Approx(std::sqrt(8 / std::exp(3.0))).epsilon(1e-12));
  // m > n lines with John weights: exponent 1/(C-1) = 1/(n-1) when C = n
  const auto frame = BLDatum::lines({vec({1, 0}), vec({-0.5, std::sqrt(3.0) / 2}), vec({-0.5, -std::sqrt(3.0) / 2})},
                                    {2.0 / 3, 2.0 / 3, 2.0 / 3});
  CHECK(volume_lower_bound({1, 1, 1}, frame, 0.0) == doctest::Approx(std::exp(-2.0)));
  try {
    volume_lower_bound({1}, BLDatum(1, {{Matrix::Ones(1, 1), 1.0}}), 0.0);
    FAIL("expected DegenerateWeights");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateWeights);
  }
}

TEST_CASE("slice product bound") {
  CHECK(meyer_bound({2, 2, 2}) == doctest::Approx(4.0 / 3).epsilon(1e-12));
  CHECK(meyer_bound({2, 2}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(meyer_bound({1, 1, 1}) == doctest::Approx(std::sqrt(6.0 / 27)).epsilon(1e-12));
}

TEST_CASE("slice constant comparison") {
  // the product-of-slices constant beats e^{-n/(n-1)} and the ratio decreases to 1
  double prev = 1e9;
  for (int n = 2; n <= 30; ++n) {
    const double ratio = meyer_constant(n) / slice_bound_constant(n);
    CHECK(ratio > 1.0);
    CHECK(ratio < prev);
    prev = ratio;
  }
  CHECK(prev < 1.1);
}

TEST_CASE("projection upper bound") {
  const auto lw = BLDatum::coordinate_hyperplanes(3);
  CHECK(volume_upper_bound_projections({1, 1, 1}, lw, 0.0) == doctest::Approx(1.0));
  CHECK(volume_upper_bound_projections({2, 2, 2}, lw, 0.0) == doctest::Approx(2 * std::sqrt(2.0)));
  const auto b3 = ConvexPolytope::cross_polytope(3);
  const auto bm = betke_mcmullen_bounds(b3);
  for (double p : bm.projections) CHECK(p == doctest::Approx(2.0));
}

TEST_CASE("surface lower bound") {
  std::vector<SliceSamples> per_axis;
  for (int i = 0; i < 3; ++i) per_axis.push_back({unit_axis(3, i), {0.5, 1.5, 2.5}, {9, 8, 9}});
  CHECK(surface_lower_bound(per_axis) == doctest::Approx(60 / std::sqrt(3.0)));
  std::vector<SliceSamples> cube;
  for (int i = 0; i < 3; ++i) cube.push_back({unit_axis(3, i), {0.5}, {1}});
  CHECK(surface_lower_bound(cube) == doctest::Approx(2 * std::sqrt(3.0)));
  std::vector<SliceSamples> none;
  for (int i = 0; i < 3; ++i) none.push_back({unit_axis(3, i), {}, {}});
  CHECK(surface_lower_bound(none) == 0.0);
  // samples must follow the axis order
  std::swap(cube[0], cube[1]);
  CHECK_THROWS_AS(surface_lower_bound(cube), Error);
}

TEST_CASE("direction constant") {
  for (int n = 1; n <= 10; ++n) {
    std::vector<Vector> axes;
    for (int i = 0; i < n; ++i) axes.push_back(unit_axis(n, i));
    CHECK(direction_constant(axes) == std::sqrt(static_cast<double>(n)));
  }
  CHECK(direction_constant({unit_axis(3, 0)}) == 1.0);
  CHECK(direction_constant({unit_axis(2, 0), unit_axis(2, 0)}) == doctest::Approx(2.0));
  std::vector<Vector> many(25, unit_axis(2, 0));
  try {
    direction_constant(many);
    FAIL("expected TooManyDirections");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManyDirections);
  }

  // brute-force check: max over a fine circle of sum |v . u_j|
  std::mt19937_64 rng(43);
  std::normal_distribution<double> g;
  std::vector<Vector> us;
  for (int j = 0; j < 5; ++j) us.push_back(vec({g(rng), g(rng)}).normalized());
  double brute = 0.0;
  for (int k = 0; k < 200000; ++k) {
    const double a = 2 * 3.141592653589793 * k / 200000;
    const Vector v = vec({std::cos(a), std::sin(a)});
    double s = 0.0;
    for (const auto& u : us) s += std::abs(v.dot(u));
    brute = std::max(brute, s);
  }
  CHECK(direction_constant(us) == doctest::Approx(brute).epsilon(1e-8));
}

TEST_CASE("general-direction surface bound") {
  const PolyconvexSet square(ConvexPolytope::box(Vector::Zero(2), Vector::Ones(2)));
  const Vector d = vec({1, 1}).normalized();
  std::vector<SliceSamples> s{midpoint_samples(square, unit_axis(2, 0)), midpoint_samples(square, d)};
  const double bound = surface_lower_bound_general(s, 1.0);
  CHECK(bound <= 4.0);
  CHECK(bound > 1.5);

  // with the axes it reduces to the axis bound
  std::vector<SliceSamples> axes{midpoint_samples(square, unit_axis(2, 0)),
                                 midpoint_samples(square, unit_axis(2, 1))};
  CHECK(surface_lower_bound_general(axes, 1.0) == doctest::Approx(surface_lower_bound(axes)));

  const auto cube = fixtures::unit_cube();
  CHECK(surface_lower_bound_general({midpoint_samples(cube, unit_axis(3, 0))}, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("projection bounds on the surface") {
  const auto cube = ConvexPolytope::box(Vector::Zero(3), Vector::Ones(3));
  const auto c = betke_mcmullen_bounds(cube);
  CHECK(c.upper == doctest::Approx(6.0));
  CHECK(c.lower == doctest::Approx(std::sqrt(12.0)));
  const auto b3 = betke_mcmullen_bounds(ConvexPolytope::cross_polytope(3));
  CHECK(b3.upper == doctest::Approx(12.0));
  CHECK(std::abs(b3.lower - 8 * std::sqrt(3.0) / 2) <= 1e-9);
  const auto thin = betke_mcmullen_bounds(ConvexPolytope::box(Vector::Zero(3), vec({10, 10, 0.01})));
  CHECK(thin.upper == doctest::Approx(2 * (100 + 0.1 + 0.1)));
}

TEST_CASE("bound reports") {
  const auto ok = make_bound_report("x", "family", BoundKind::Lower, 0.5, 1.0, "");
  CHECK(ok.valid);
  CHECK(*ok.slack == doctest::Approx(0.5));
  CHECK_FALSE(make_bound_report("x", "f", BoundKind::Lower, 1.1, 1.0, "").valid);
  CHECK(make_bound_report("x", "f", BoundKind::Upper, 1.0 - 1e-10, 1.0, "").valid);
  CHECK_FALSE(make_bound_report("x", "f", BoundKind::Upper, 0.9, 1.0, "").valid);
}
