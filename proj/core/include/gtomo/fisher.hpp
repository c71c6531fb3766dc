#pragma once

#include <string_view>
#include <vector>

#include "gtomo/density.hpp"
#include "gtomo/error.hpp"
#include "gtomo/polyconvex.hpp"
#include "gtomo/slicing.hpp"

namespace gtomo {

enum class FisherForm { ClosedForm, SurfaceIntegral, SampledLowerBound, EpsilonQuotient };

std::string_view to_string(FisherForm form) noexcept;

struct FisherContribution {
  double location = 0.0;
  double magnitude = 0.0;
};

struct FisherResult {
  double value = 0.0;
  FisherForm form = FisherForm::ClosedForm;
  Vector direction;  // empty when the input carried no direction
  std::vector<FisherContribution> diagnostics;
};

/// Total variation of a piecewise-monotone density from its one-sided limits:
/// sum over intervals of |f(a_{i+1}-) - f(a_i+)| plus sum over breakpoints of
/// the jumps |f(a_i+) - f(a_i-)|. Diagnostics list the jumps.
/// Throws NonMonotoneInterval when an interval fails the grid check.
FisherResult l1_fisher_piecewise(const PiecewiseDensity& f, const Vector& direction = {});

/// Lower bound sum_j |alpha_{j+1} - alpha_j| / volume with zero padding at
/// both ends. When `marginal` is given, every sample position close to one of
/// its breakpoints must be a continuity point there, otherwise
/// DiscontinuousSamplePoint is thrown.
FisherResult l1_fisher_sampled(const SliceSamples& samples, double total_volume,
                               const PiecewiseDensity* marginal = nullptr,
                               double geom_tol = kDefaultGeomTolerance);

/// Checked variant: the marginal along the sample direction is computed from U.
FisherResult l1_fisher_sampled(const SliceSamples& samples, const PolyconvexSet& set);

/// (1/V) * sum over boundary patches of |nu . u| * area.
FisherResult l1_fisher_surface_form(const PolyconvexSet& set, const Vector& u);

/// Sum of the surface form over the coordinate axes, i.e. (1/V) * int ||n||_1 dS.
FisherResult l1_fisher_total(const PolyconvexSet& set);

struct SuperadditivityEntry {
  Vector direction;
  double marginal = 0.0;  // I_1 of the projection X . u
  double body = 0.0;      // directional value of X along u
};

struct SuperadditivityReport {
  std::vector<SuperadditivityEntry> entries;
  double axis_marginal_sum = 0.0;  // sum over coordinate axes of I_1(X_i)
  double total = 0.0;              // I_1(X)
};

class SuperadditivityViolation : public Error {
 public:
  SuperadditivityViolation(Vector direction, double marginal, double body);
  const Vector& direction() const { return direction_; }
  double marginal() const { return marginal_; }
  double body() const { return body_; }

 private:
  Vector direction_;
  double marginal_;
  double body_;
};

/// Compares marginal and body values along each direction and the sum of
/// axis marginals against the total. An empty direction list means the axes.
/// Throws SuperadditivityViolation if any marginal exceeds its bound by more
/// than `tol`.
SuperadditivityReport check_superadditivity(const PolyconvexSet& set,
                                            std::vector<Vector> directions = {},
                                            double tol = 1e-8);

}  // namespace gtomo
