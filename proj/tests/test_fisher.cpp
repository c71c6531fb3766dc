#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"

using namespace gtomo;
using fixtures::box;
using fixtures::vec;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvariantViolation;
}

}  // namespace

TEST_CASE("closed form on simple densities") {
  CHECK(l1_fisher_piecewise(PiecewiseDensity::uniform_on_intervals({{0, 1}})).value ==
        doctest::Approx(2.0));
  const auto three = PiecewiseDensity::uniform_on_intervals({{0, 1}, {2, 3}, {5, 6}});
  CHECK(l1_fisher_piecewise(three).value == doctest::Approx(2.0));
  CHECK(l1_fisher_piecewise(three).diagnostics.size() == 6);

  // unimodal Gaussian truncated at 8 sigma: total variation 2 * peak
  const double norm = std::erf(8.0 / std::sqrt(2.0));
  auto gauss = [norm](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2 * std::numbers::pi) / norm; };
  const PiecewiseDensity g({-8.0, 0.0, 8.0}, {gauss, gauss}, {}, 1e-8);
  const double peak = 1.0 / std::sqrt(2 * std::numbers::pi) / norm;
  const double tails = 2.0 * gauss(8.0);  // the truncation adds two tiny jumps
  CHECK(l1_fisher_piecewise(g).value == doctest::Approx(2 * peak - 2 * gauss(8.0) + tails).epsilon(1e-12));
  CHECK(l1_fisher_piecewise(g).value == doctest::Approx(2.0 / std::sqrt(2 * std::numbers::pi)).epsilon(1e-9));
}

TEST_CASE("non-monotone intervals are rejected") {
  auto bump = [](double t) { return 1.5 * (1 - (2 * t - 1) * (2 * t - 1)); };  // mass 1 on [0,1]
  const PiecewiseDensity f({0.0, 1.0}, {bump});
  CHECK(code_of([&] { l1_fisher_piecewise(f); }) == ErrorCode::NonMonotoneInterval);
  // split at the peak it is fine
  const PiecewiseDensity g({0.0, 0.5, 1.0}, {bump, bump});
  CHECK(l1_fisher_piecewise(g).value == doctest::Approx(3.0));
}

TEST_CASE("density invariants") {
  CHECK(code_of([] { PiecewiseDensity({0.0, 1.0}, {[](double) { return 2.0; }}); }) ==
        ErrorCode::InvariantViolation);
  CHECK(code_of([] { PiecewiseDensity({1.0, 0.0}, {[](double) { return -1.0; }}); }) ==
        ErrorCode::InvariantViolation);
}

TEST_CASE("sampled bound on the void cube") {
  const SliceSamples s{unit_axis(3, 0), {0.5, 1.5, 2.5}, {9, 8, 9}};
  const auto r = l1_fisher_sampled(s, 26.0);
  CHECK(r.value == doctest::Approx(20.0 / 26).epsilon(1e-12));
  CHECK(r.form == FisherForm::SampledLowerBound);
  CHECK(l1_fisher_sampled(s, fixtures::void_cube()).value == doctest::Approx(20.0 / 26));
  CHECK(l1_fisher_sampled(SliceSamples{unit_axis(3, 0), {0.5}, {1.0}}, 1.0).value == doctest::Approx(2.0));
}

TEST_CASE("sampling a discontinuity is an error") {
  const auto corner = fixtures::corner_squares();
  const auto at_corner = sample_slices(corner, unit_axis(2, 0), {0.5});
  CHECK(at_corner.areas[0] == doctest::Approx(1.0));
  // unchecked, the value overshoots the true information 2
  CHECK(l1_fisher_sampled(at_corner, 0.5).value == doctest::Approx(4.0));
  CHECK(code_of([&] { l1_fisher_sampled(at_corner, corner); }) == ErrorCode::DiscontinuousSamplePoint);
  // away from the corner sampling is fine
  const auto fine = sample_slices(corner, unit_axis(2, 0), {0.25, 0.75});
  CHECK(l1_fisher_sampled(fine, corner).value == doctest::Approx(2.0));
  // the void cube jumps at x = 1
  const auto vc = fixtures::void_cube();
  CHECK(code_of([&] { l1_fisher_sampled(sample_slices(vc, unit_axis(3, 0), {1.0}), vc); }) ==
        ErrorCode::DiscontinuousSamplePoint);
  // the octahedron is continuous at 0 even though 0 is a breakpoint
  const auto b3 = fixtures::cross(3);
  CHECK(l1_fisher_sampled(sample_slices(b3, unit_axis(3, 0), {0.0}), b3).value == doctest::Approx(3.0));
}

TEST_CASE("corner squares: full profile gives 2") {
  const auto corner = fixtures::corner_squares();
  const auto f = marginal_profile(corner, unit_axis(2, 0));
  CHECK(l1_fisher_piecewise(f).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(l1_fisher_surface_form(corner, unit_axis(2, 0)).value == doctest::Approx(4.0));
}

TEST_CASE("surface form") {
  const auto cube = fixtures::unit_cube();
  CHECK(l1_fisher_surface_form(cube, unit_axis(3, 0)).value == doctest::Approx(2.0));
  CHECK(l1_fisher_surface_form(cube, vec({1, 1, 0}).normalized()).value ==
        doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(l1_fisher_surface_form(fixtures::void_cube(), unit_axis(3, 0)).value ==
        doctest::Approx(20.0 / 26).epsilon(1e-12));
  CHECK(l1_fisher_total(cube).value == doctest::Approx(6.0));
  CHECK(l1_fisher_total(fixtures::void_cube()).value == doctest::Approx(60.0 / 26).epsilon(1e-12));
  const PolyconvexSet rect(box({0, 0}, {2, 3}));
  CHECK(l1_fisher_total(rect).value == doctest::Approx((2 * 3 + 2 * 2) / 6.0));
}

TEST_CASE("closed form on random axis-aligned unions") {
  // Marginals of box unions are step functions, so midpoint samples recover
  // the exact variation. The directional body value can only be larger.
  std::mt19937_64 rng(41);
  int strict = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = fixtures::random_union(3, rng);
    const double v = union_volume(u);
    for (int i = 0; i < 3; ++i) {
      const double closed = l1_fisher_piecewise(marginal_profile(u, unit_axis(3, i))).value;
      const double sampled = l1_fisher_sampled(midpoint_samples(u, unit_axis(3, i)), v).value;
      const double surface = l1_fisher_surface_form(u, unit_axis(3, i)).value;
      CHECK(closed == doctest::Approx(sampled).epsilon(1e-9));
      CHECK(closed <= surface + 1e-9);
      if (closed < surface - 1e-6) ++strict;
    }
  }
  CHECK(strict > 0);
}

TEST_CASE("closed form equals surface form for single boxes") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyconvexSet b(fixtures::random_box(3, rng));
    for (int i = 0; i < 3; ++i) {
      const double closed = l1_fisher_piecewise(marginal_profile(b, unit_axis(3, i))).value;
      CHECK(closed == doctest::Approx(l1_fisher_surface_form(b, unit_axis(3, i)).value).epsilon(1e-9));
    }
  }
}

TEST_CASE("stacked boxes: marginal below the directional value") {
  const PolyconvexSet u({box({0, 0}, {1, 1}), box({1, 5}, {2, 6})});
  CHECK(l1_fisher_piecewise(marginal_profile(u, unit_axis(2, 0))).value == doctest::Approx(1.0));
  CHECK(l1_fisher_surface_form(u, unit_axis(2, 0)).value == doctest::Approx(2.0));
}

TEST_CASE("adding samples never lowers the sampled bound") {
  const auto b3 = fixtures::cross(3);
  const Vector u = unit_axis(3, 1);
  std::vector<double> pos{-0.6};
  double prev = l1_fisher_sampled(sample_slices(b3, u, pos), b3).value;
  for (double t : {0.3, -0.1, 0.75, 0.05, -0.95}) {
    pos.push_back(t);
    const double next = l1_fisher_sampled(sample_slices(b3, u, pos), b3).value;
    CHECK(next >= prev - 1e-12);
    prev = next;
  }
}

TEST_CASE("scaling law") {
  const auto vc = fixtures::void_cube();
  for (double lambda : {0.5, 2.0}) {
    for (int i = 0; i < 3; ++i) {
      const double base = l1_fisher_surface_form(vc, unit_axis(3, i)).value;
      const double scaled = l1_fisher_surface_form(vc.scaled(lambda), unit_axis(3, i)).value;
      CHECK(std::abs(scaled - base / lambda) <= 1e-8);
      const double closed = l1_fisher_piecewise(marginal_profile(vc.scaled(lambda), unit_axis(3, i))).value;
      CHECK(std::abs(closed - base / lambda) <= 1e-8);
    }
  }
}

TEST_CASE("superadditivity on fixtures") {
  const auto cube = check_superadditivity(fixtures::unit_cube());
  for (const auto& e : cube.entries) CHECK(e.marginal == doctest::Approx(e.body));
  CHECK(cube.axis_marginal_sum == doctest::Approx(6.0));

  const auto b3 = check_superadditivity(fixtures::cross(3));
  for (const auto& e : b3.entries) {
    CHECK(std::abs(e.marginal - 3.0) <= 1e-8);
    CHECK(std::abs(e.body - 3.0) <= 1e-8);
  }

  const auto vc = check_superadditivity(fixtures::void_cube());
  CHECK(vc.axis_marginal_sum == doctest::Approx(60.0 / 26));
  CHECK(vc.total == doctest::Approx(60.0 / 26));

  // strict inequality for the corner squares
  const auto corner = check_superadditivity(fixtures::corner_squares());
  CHECK(corner.axis_marginal_sum == doctest::Approx(4.0));
  CHECK(corner.total == doctest::Approx(8.0));

  // off-axis directions on a tilted body
  const auto tri = check_superadditivity(PolyconvexSet(ConvexPolytope::standard_simplex(2)),
                                         {vec({1, 1}).normalized(), vec({1, -2}).normalized()});
  CHECK(tri.entries.size() == 2);
}
