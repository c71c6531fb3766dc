#include "gtomo/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gtomo {

std::string_view to_string(FisherForm form) noexcept {
  switch (form) {
    case FisherForm::ClosedForm: return "closed_form";
    case FisherForm::SurfaceIntegral: return "surface_integral";
    case FisherForm::SampledLowerBound: return "sampled_lower_bound";
    case FisherForm::EpsilonQuotient: return "epsilon_quotient";
  }
  return "unknown";
}

FisherResult l1_fisher_piecewise(const PiecewiseDensity& f, const Vector& direction) {
  if (const auto bad = f.find_non_monotone_interval()) {
    const auto& bp = f.breakpoints();
    std::ostringstream msg;
    msg << "density is not monotone on (" << bp[*bad] << ", " << bp[*bad + 1] << ")";
    throw Error(ErrorCode::NonMonotoneInterval, msg.str());
  }
  FisherResult out;
  out.form = FisherForm::ClosedForm;
  out.direction = direction;
  const auto& bp = f.breakpoints();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    total += std::abs(f.left_limit(i + 1) - f.right_limit(i));
  }
  for (std::size_t i = 0; i < bp.size(); ++i) {
    const double jump = std::abs(f.right_limit(i) - f.left_limit(i));
    total += jump;
    if (jump > 0.0) out.diagnostics.push_back({bp[i], jump});
  }
  out.value = total;
  return out;
}

FisherResult l1_fisher_sampled(const SliceSamples& samples, double total_volume,
                               const PiecewiseDensity* marginal, double geom_tol) {
  samples.validate();
  if (!(total_volume > 0.0) || !std::isfinite(total_volume)) {
    throw Error(ErrorCode::InvariantViolation, "total volume must be positive");
  }
  if (marginal != nullptr) {
    const auto& bp = marginal->breakpoints();
    const double scale = std::max(marginal->sup_norm(), 1e-300);
    for (double theta : samples.positions) {
      const auto it = std::lower_bound(bp.begin(), bp.end(), theta);
      for (auto jt : {it - 1, it}) {
        if (jt < bp.begin() || jt >= bp.end()) continue;
        if (std::abs(*jt - theta) > geom_tol * (1.0 + std::abs(*jt))) continue;
        const auto i = static_cast<std::size_t>(jt - bp.begin());
        const double l = marginal->left_limit(i), r = marginal->right_limit(i);
        const double p = marginal->point_value(i);
        const double gap = std::max({std::abs(l - r), std::abs(p - l), std::abs(p - r)});
        if (gap > 1e-8 * scale) {
          std::ostringstream msg;
          msg << "sample at " << theta << " sits on a discontinuity of the marginal (left "
              << l << ", value " << p << ", right " << r << ")";
          throw Error(ErrorCode::DiscontinuousSamplePoint, msg.str());
        }
      }
    }
  }
  FisherResult out;
  out.form = FisherForm::SampledLowerBound;
  out.direction = samples.direction;
  double prev = 0.0, total = 0.0;
  for (std::size_t j = 0; j < samples.areas.size(); ++j) {
    const double step = std::abs(samples.areas[j] - prev);
    out.diagnostics.push_back({samples.positions[j], step / total_volume});
    total += step;
    prev = samples.areas[j];
  }
  total += prev;
  out.value = total / total_volume;
  return out;
}

FisherResult l1_fisher_sampled(const SliceSamples& samples, const PolyconvexSet& set) {
  const auto marginal = marginal_profile(set, samples.direction);
  return l1_fisher_sampled(samples, union_volume(set), &marginal, set.tolerance().geom);
}

FisherResult l1_fisher_surface_form(const PolyconvexSet& set, const Vector& u) {
  if (u.size() != set.dim() || std::abs(u.norm() - 1.0) > 1e-8) {
    throw Error(ErrorCode::InvariantViolation, "direction must be a unit vector of matching dimension");
  }
  const double v = union_volume(set);
  FisherResult out;
  out.form = FisherForm::SurfaceIntegral;
  out.direction = u;
  double total = 0.0;
  for (const auto& patch : boundary_patches(set)) {
    const double c = std::abs(patch.normal.dot(u)) * patch.area;
    if (c <= 0.0) continue;
    total += c;
    out.diagnostics.push_back({patch.offset, c / v});
  }
  out.value = total / v;
  return out;
}

FisherResult l1_fisher_total(const PolyconvexSet& set) {
  FisherResult out;
  out.form = FisherForm::SurfaceIntegral;
  for (int i = 0; i < set.dim(); ++i) {
    const double value = l1_fisher_surface_form(set, unit_axis(set.dim(), i)).value;
    out.value += value;
    out.diagnostics.push_back({static_cast<double>(i), value});
  }
  return out;
}

namespace {

std::string violation_message(const Vector& u, double marginal, double body) {
  std::ostringstream msg;
  msg << "marginal value " << marginal << " exceeds directional value " << body
      << " along (" << u.transpose() << ")";
  return msg.str();
}

}  // namespace

SuperadditivityViolation::SuperadditivityViolation(Vector direction, double marginal, double body)
    : Error(ErrorCode::SuperadditivityViolation, violation_message(direction, marginal, body)),
      direction_(std::move(direction)),
      marginal_(marginal),
      body_(body) {}

SuperadditivityReport check_superadditivity(const PolyconvexSet& set, std::vector<Vector> directions,
                                            double tol) {
  const int n = set.dim();
  if (directions.empty()) {
    for (int i = 0; i < n; ++i) directions.push_back(unit_axis(n, i));
  }
  SuperadditivityReport report;
  for (const auto& u : directions) {
    const double marginal = l1_fisher_piecewise(marginal_profile(set, u)).value;
    const double body = l1_fisher_surface_form(set, u).value;
    if (marginal > body + tol) throw SuperadditivityViolation(u, marginal, body);
    report.entries.push_back({u, marginal, body});
  }
  for (int i = 0; i < n; ++i) {
    const Vector e = unit_axis(n, i);
    const auto hit = std::find_if(report.entries.begin(), report.entries.end(),
                                  [&](const SuperadditivityEntry& x) { return x.direction == e; });
    report.axis_marginal_sum += hit != report.entries.end()
                                    ? hit->marginal
                                    : l1_fisher_piecewise(marginal_profile(set, e)).value;
  }
  report.total = l1_fisher_total(set).value;
  if (report.axis_marginal_sum > report.total + tol) {
    throw SuperadditivityViolation(Vector::Ones(n) / std::sqrt(static_cast<double>(n)),
                                   report.axis_marginal_sum, report.total);
  }
  return report;
}

}  // namespace gtomo
