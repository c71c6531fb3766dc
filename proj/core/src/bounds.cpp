#include "gtomo/bounds.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "gtomo/error.hpp"

namespace gtomo {

double bound_tolerance(double true_value) {
  const double mag = std::abs(true_value);
  return mag <= 1e3 ? 1e-9 : 1e-12 * mag;
}

BoundReport make_bound_report(std::string name, std::string family, BoundKind kind, double bound,
                              std::optional<double> truth, std::string digest) {
  BoundReport r{std::move(name), std::move(family), kind, bound, truth, std::nullopt,
                std::move(digest), true};
  if (truth) {
    r.slack = kind == BoundKind::Lower ? *truth - bound : bound - *truth;
    r.valid = std::isfinite(bound) && *r.slack >= -bound_tolerance(*truth);
  } else {
    r.valid = std::isfinite(bound);
  }
  return r;
}

double volume_lower_bound(const std::vector<double>& smax, const BLDatum& datum, double mg) {
  if (smax.size() != datum.size()) {
    throw Error(ErrorCode::InvariantViolation, "one maximal slice per datum subspace is required");
  }
  const double c = datum.weight_sum();
  if (c <= 1.0 + 1e-12) {
    throw Error(ErrorCode::DegenerateWeights, "weight sum " + std::to_string(c) + " is not above 1");
  }
  double log_num = 0.0;
  for (std::size_t j = 0; j < smax.size(); ++j) {
    if (!(smax[j] > 0.0)) throw Error(ErrorCode::InvariantViolation, "maximal slices must be positive");
    log_num += datum.subspaces()[j].weight * std::log(smax[j]);
  }
  return std::exp((log_num - datum.dim() - mg) / (c - 1.0));
}

double meyer_constant(int n) {
  // log(n!/n^n) without overflow
  const double log_c = std::lgamma(n + 1.0) - n * std::log(static_cast<double>(n));
  return std::exp(log_c / (n - 1));
}

double slice_bound_constant(int n) { return std::exp(-static_cast<double>(n) / (n - 1)); }

double meyer_bound(const std::vector<double>& origin_slices) {
  const int n = static_cast<int>(origin_slices.size());
  if (n < 2) throw Error(ErrorCode::DimensionError, "the slice bound needs n >= 2");
  double prod = 1.0;
  for (double s : origin_slices) {
    if (s < 0.0) throw Error(ErrorCode::InvariantViolation, "slice volumes must be nonnegative");
    prod *= s;
  }
  return meyer_constant(n) * std::pow(prod, 1.0 / (n - 1));
}

double volume_upper_bound_projections(const std::vector<double>& proj_volumes, const BLDatum& datum,
                                      double mg) {
  if (proj_volumes.size() != datum.size()) {
    throw Error(ErrorCode::InvariantViolation, "one projection per datum subspace is required");
  }
  double log_val = mg;
  for (std::size_t j = 0; j < proj_volumes.size(); ++j) {
    if (!(proj_volumes[j] > 0.0)) {
      throw Error(ErrorCode::InvariantViolation, "projection volumes must be positive");
    }
    log_val += datum.subspaces()[j].weight * std::log(proj_volumes[j]);
  }
  return std::exp(log_val);
}

double sampled_variation(const SliceSamples& samples) {
  samples.validate();
  double prev = 0.0, total = 0.0;
  for (double a : samples.areas) {
    total += std::abs(a - prev);
    prev = a;
  }
  return total + prev;
}

double surface_lower_bound(const std::vector<SliceSamples>& samples_per_axis) {
  const int n = static_cast<int>(samples_per_axis.size());
  if (n == 0) return 0.0;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& s = samples_per_axis[i];
    if (s.direction.size() != n || (s.direction - unit_axis(n, i)).norm() > 1e-12) {
      throw Error(ErrorCode::InvariantViolation,
                  "samples for axis " + std::to_string(i) + " are not taken along e_" +
                      std::to_string(i + 1));
    }
    total += sampled_variation(s);
  }
  return total / std::sqrt(static_cast<double>(n));
}

double direction_constant(const std::vector<Vector>& directions) {
  const std::size_t m = directions.size();
  if (m == 0) throw Error(ErrorCode::InvariantViolation, "at least one direction is required");
  if (m > kMaxDirections) {
    throw Error(ErrorCode::TooManyDirections,
                std::to_string(m) + " directions exceed the cap of " + std::to_string(kMaxDirections));
  }
  // s_1 = +1 without loss of generality; walk the rest in Gray-code order.
  std::vector<int> sign(m, 1);
  Vector v = Vector::Zero(directions.front().size());
  for (const auto& u : directions) v += u;
  double best = v.squaredNorm();
  const std::uint64_t patterns = std::uint64_t{1} << (m - 1);
  for (std::uint64_t k = 1; k < patterns; ++k) {
    const std::size_t j = static_cast<std::size_t>(std::countr_zero(k)) + 1;
    v -= 2.0 * sign[j] * directions[j];
    sign[j] = -sign[j];
    best = std::max(best, v.squaredNorm());
  }
  return std::sqrt(best);
}

double surface_lower_bound_general(const std::vector<SliceSamples>& samples, double total_volume) {
  if (!(total_volume > 0.0)) throw Error(ErrorCode::InvariantViolation, "total volume must be positive");
  if (samples.empty()) return 0.0;
  std::vector<Vector> dirs;
  double sum = 0.0;
  for (const auto& s : samples) {
    dirs.push_back(s.direction);
    // V * I_1-sampled is the raw variation
    sum += sampled_variation(s);
  }
  return sum / direction_constant(dirs);
}

double projection_volume(const ConvexPolytope& p, const Matrix& basis) {
  if (basis.cols() == p.dim()) return p.volume();
  return project(p, basis).volume();
}

BetkeMcMullen betke_mcmullen_bounds(const ConvexPolytope& p) {
  const int n = p.dim();
  if (n < 2) throw Error(ErrorCode::DimensionError, "projection bounds need n >= 2");
  BetkeMcMullen out;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    Matrix b = Matrix::Zero(n, n - 1);
    for (int k = 0, col = 0; k < n; ++k) {
      if (k != i) b(k, col++) = 1.0;
    }
    const double a = projection_volume(p, b);
    out.projections.push_back(a);
    sum += a;
    sq += a * a;
  }
  out.upper = 2.0 * sum;
  out.lower = std::sqrt(4.0 * sq);
  return out;
}

}  // namespace gtomo
