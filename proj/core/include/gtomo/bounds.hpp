#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtomo/brascamp_lieb.hpp"
#include "gtomo/polytope.hpp"
#include "gtomo/slicing.hpp"

namespace gtomo {

enum class BoundKind { Lower, Upper };

struct BoundReport {
  std::string bound_name;
  std::string family;  // short description of the inequality
  BoundKind kind = BoundKind::Lower;
  double bound_value = 0.0;
  std::optional<double> true_value;
  std::optional<double> slack;  // true - bound for lower bounds, bound - true for upper
  std::string inputs_digest;
  bool valid = true;
};

/// Additive 1e-9 up to magnitude 1e3, relative beyond.
double bound_tolerance(double true_value);

/// Fills slack and validity from the true value when one is known.
BoundReport make_bound_report(std::string name, std::string family, BoundKind kind, double bound,
                              std::optional<double> truth, std::string digest);

/// ((prod S_max(j)^{c_j}) / e^{n + M_g})^{1/(C-1)}. Throws DegenerateWeights
/// when C <= 1 + 1e-12 and InvariantViolation for a non-positive slice or a
/// length mismatch with the datum.
double volume_lower_bound(const std::vector<double>& smax, const BLDatum& datum, double mg);

/// ((n!/n^n) prod_i V_{n-1}(K cap e_i^perp))^{1/(n-1)} with n = slices.size().
double meyer_bound(const std::vector<double>& origin_slices);

/// (n!/n^n)^{1/(n-1)}
double meyer_constant(int n);
/// e^{-n/(n-1)}, the constant of volume_lower_bound for the axes datum.
double slice_bound_constant(int n);

/// e^{M_g} prod V_{r_j}(P_{E_j} K)^{c_j}
double volume_upper_bound_projections(const std::vector<double>& proj_volumes, const BLDatum& datum,
                                      double mg);

/// Sum of |alpha_{j+1} - alpha_j| with zero padding at both ends.
double sampled_variation(const SliceSamples& samples);

/// (1/sqrt(n)) sum over axes of sampled_variation; samples_per_axis[i] must
/// be taken along e_i.
double surface_lower_bound(const std::vector<SliceSamples>& samples_per_axis);

/// max over unit v of sum_j |v . u_j|, by enumerating sign patterns.
/// Throws TooManyDirections when more than 24 directions are given.
double direction_constant(const std::vector<Vector>& directions);
inline constexpr std::size_t kMaxDirections = 24;

/// sum_j V * I_1-sampled(samples_j) / direction_constant(directions).
double surface_lower_bound_general(const std::vector<SliceSamples>& samples, double total_volume);

struct BetkeMcMullen {
  double upper = 0.0;  // 2 sum V_{n-1}(P_{e_i^perp} K)
  double lower = 0.0;  // sqrt(4 sum V_{n-1}(P_{e_i^perp} K)^2)
  std::vector<double> projections;
};

BetkeMcMullen betke_mcmullen_bounds(const ConvexPolytope& p);

/// V_{r}(P_E K) for an orthonormal basis E of E (r = basis.cols()).
double projection_volume(const ConvexPolytope& p, const Matrix& basis);

}  // namespace gtomo
