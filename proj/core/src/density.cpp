#include "gtomo/density.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gtomo/error.hpp"

namespace gtomo {

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels) {
  static constexpr std::array<double, 4> kNodes = {0.1834346424956498, 0.5255324099163290,
                                                   0.7966664774136267, 0.9602898564975363};
  static constexpr std::array<double, 4> kWeights = {0.3626837833783620, 0.3137066458778873,
                                                     0.2223810344533745, 0.1012285362903763};
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    for (std::size_t k = 0; k < kNodes.size(); ++k) {
      total += kWeights[k] * (f(mid - half * kNodes[k]) + f(mid + half * kNodes[k])) * half;
    }
  }
  return total;
}

PiecewiseDensity::PiecewiseDensity(std::vector<double> breakpoints, std::vector<Piece> pieces,
                                   std::vector<double> point_values, double mass_tolerance)
    : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  const std::size_t m = breakpoints_.size();
  if (m < 2) throw Error(ErrorCode::InvariantViolation, "a density needs at least two breakpoints");
  if (pieces_.size() != m - 1) {
    throw Error(ErrorCode::InvariantViolation, "one piece per interval is required");
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw Error(ErrorCode::InvariantViolation, "breakpoints must be strictly increasing");
    }
  }
  left_.assign(m, 0.0);
  right_.assign(m, 0.0);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    right_[i] = pieces_[i](breakpoints_[i]);
    left_[i + 1] = pieces_[i](breakpoints_[i + 1]);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(left_[i]) || !std::isfinite(right_[i])) {
      throw Error(ErrorCode::InvariantViolation, "one-sided limits must be finite");
    }
  }
  if (point_values.empty()) {
    point_values_.resize(m);
    for (std::size_t i = 0; i < m; ++i) point_values_[i] = std::max(left_[i], right_[i]);
  } else if (point_values.size() != m) {
    throw Error(ErrorCode::InvariantViolation, "one point value per breakpoint is required");
  } else {
    point_values_ = std::move(point_values);
  }

  for (std::size_t i = 0; i + 1 < m; ++i) {
    mass_ += gauss_legendre(pieces_[i], breakpoints_[i], breakpoints_[i + 1]);
  }
  if (std::abs(mass_ - 1.0) > mass_tolerance) {
    throw Error(ErrorCode::InvariantViolation,
                "density mass is " + std::to_string(mass_) + ", expected 1");
  }
}

PiecewiseDensity PiecewiseDensity::uniform_on_intervals(
    std::vector<std::pair<double, double>> intervals) {
  std::sort(intervals.begin(), intervals.end());
  double length = 0.0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!(intervals[i].second > intervals[i].first)) {
      throw Error(ErrorCode::InvariantViolation, "intervals must have positive length");
    }
    if (i > 0 && !(intervals[i].first > intervals[i - 1].second)) {
      throw Error(ErrorCode::InvariantViolation, "intervals must be disjoint");
    }
    length += intervals[i].second - intervals[i].first;
  }
  const double height = 1.0 / length;
  std::vector<double> breakpoints;
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (i > 0) pieces.push_back([](double) { return 0.0; });
    breakpoints.push_back(intervals[i].first);
    breakpoints.push_back(intervals[i].second);
    pieces.push_back([height](double) { return height; });
  }
  return PiecewiseDensity(std::move(breakpoints), std::move(pieces));
}

double PiecewiseDensity::evaluate(double t) const {
  if (t < breakpoints_.front() || t > breakpoints_.back()) return 0.0;
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const auto idx = static_cast<std::size_t>(it - breakpoints_.begin());
  if (*it == t) return point_values_[idx];
  return pieces_[idx - 1](t);
}

double PiecewiseDensity::left_limit(std::size_t i) const { return left_[i]; }
double PiecewiseDensity::right_limit(std::size_t i) const { return right_[i]; }

double PiecewiseDensity::sup_norm(int grid) const {
  double sup = 0.0;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    sup = std::max({sup, std::abs(left_[i]), std::abs(right_[i]), std::abs(point_values_[i])});
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double a = breakpoints_[i], b = breakpoints_[i + 1];
    for (int k = 1; k < grid - 1; ++k) {
      sup = std::max(sup, std::abs(pieces_[i](a + (b - a) * k / (grid - 1))));
    }
  }
  return sup;
}

std::optional<std::size_t> PiecewiseDensity::find_non_monotone_interval(int grid) const {
  const double scale = std::max(sup_norm(grid), 1e-300);
  const double tol = 1e-10 * scale;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double a = breakpoints_[i], b = breakpoints_[i + 1];
    bool up = false, down = false;
    double prev = pieces_[i](a);
    for (int k = 1; k < grid; ++k) {
      const double cur = pieces_[i](a + (b - a) * k / (grid - 1));
      if (!std::isfinite(cur)) return i;
      if (cur > prev + tol) up = true;
      if (cur < prev - tol) down = true;
      prev = cur;
    }
    if (up && down) return i;
  }
  return std::nullopt;
}

double PiecewiseDensity::integrate_trapezoid(int points) const {
  double total = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double a = breakpoints_[i], b = breakpoints_[i + 1];
    const double h = (b - a) / (points - 1);
    double sum = 0.5 * (pieces_[i](a) + pieces_[i](b));
    for (int k = 1; k < points - 1; ++k) sum += pieces_[i](a + k * h);
    total += sum * h;
  }
  return total;
}

}  // namespace gtomo
