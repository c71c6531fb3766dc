#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace gtomo {

/// A compactly supported 1-D density that is continuous on each open interval
/// between consecutive breakpoints a_1 < ... < a_M and zero outside [a_1, a_M].
///
/// Each interval carries a function that is continuous on the *closed*
/// interval and agrees with the density inside it; its endpoint values are
/// the one-sided limits f(a_i+) and f(a_{i+1}-). The density's value at a
/// breakpoint itself is stored separately, since a closed body's slice at a
/// breakpoint may differ from both limits.
class PiecewiseDensity {
 public:
  using Piece = std::function<double(double)>;

  /// `pieces` has one entry per interval (breakpoints.size() - 1). When
  /// `point_values` is empty the value at a breakpoint defaults to the larger
  /// one-sided limit. Throws InvariantViolation if breakpoints are not strictly
  /// increasing, a limit is not finite, or the mass differs from 1 by more
  /// than `mass_tolerance`.
  PiecewiseDensity(std::vector<double> breakpoints, std::vector<Piece> pieces,
                   std::vector<double> point_values = {}, double mass_tolerance = 1e-8);

  /// Uniform density on a union of disjoint closed intervals.
  static PiecewiseDensity uniform_on_intervals(std::vector<std::pair<double, double>> intervals);

  double operator()(double t) const { return evaluate(t); }
  double evaluate(double t) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t interval_count() const { return pieces_.size(); }
  /// Value of the i-th interval's function (i in [0, interval_count())).
  double interval_value(std::size_t i, double t) const { return pieces_[i](t); }

  /// f(a_i-), with f(a_1-) = 0.
  double left_limit(std::size_t i) const;
  /// f(a_i+), with f(a_M+) = 0.
  double right_limit(std::size_t i) const;
  double point_value(std::size_t i) const { return point_values_[i]; }

  double total_mass() const { return mass_; }
  /// Largest of all one-sided limits and grid values.
  double sup_norm(int grid = 64) const;

  /// Index of the first interval on which the sampled values on a uniform
  /// grid of `grid` points are neither non-decreasing nor non-increasing.
  std::optional<std::size_t> find_non_monotone_interval(int grid = 64) const;

  /// Composite trapezoid rule with `points` nodes per interval.
  double integrate_trapezoid(int points = 256) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Piece> pieces_;
  std::vector<double> left_;   // f(a_i-) per breakpoint
  std::vector<double> right_;  // f(a_i+) per breakpoint
  std::vector<double> point_values_;
  double mass_ = 0.0;
};

/// Integral of f over [a, b] by composite 8-point Gauss-Legendre on
/// `panels` equal panels.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels = 16);

}  // namespace gtomo
