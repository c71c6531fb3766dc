#include "report.hpp"

#include <cmath>
#include <sstream>

namespace gtomo::cli {

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::VolumeBound: return "volume-bound";
    case Command::SurfaceBound: return "surface-bound";
    case Command::Fisher: return "fisher";
    case Command::Verify: return "verify";
    case Command::Report: return "report";
  }
  return "unknown";
}

namespace {

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

std::string fmt(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + fmt(xs[i]);
  return out + "]";
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

bool is_axis(const Vector& u, int& axis) {
  for (int i = 0; i < u.size(); ++i) {
    if ((u - unit_axis(static_cast<int>(u.size()), i)).norm() <= 1e-12) {
      axis = i;
      return true;
    }
  }
  return false;
}

// Accumulates sections and errors while the commands run.
class Builder {
 public:
  Builder(const RunSpec& spec, const PolyconvexSet& set) : spec_(spec), set_(set) {
    volume_ = union_volume(set);
    surface_ = union_surface_area(set);
    doc_["command"] = std::string(to_string(spec.command));
    doc_["body"] = {{"dim", set.dim()},
                    {"pieces", set.size()},
                    {"convex", set.size() == 1},
                    {"volume", volume_},
                    {"surface_area", surface_}};
    doc_["bounds"] = json::array();
    doc_["fisher"] = json::array();
    doc_["errors"] = json::array();
  }

  void error(const Error& e, const std::string& during, int exit) {
    doc_["errors"].push_back({{"code", std::string(gtomo::to_string(e.code()))},
                              {"during", during},
                              {"message", e.what()}});
    exit_ = std::max(exit_, exit);
  }

  void bound(const BoundReport& r) {
    doc_["bounds"].push_back(to_json(r));
    if (!r.valid) exit_ = std::max(exit_, kExitInvalid);
  }

  // Runs f, turning gtomo errors into report entries.
  template <class F>
  void guarded(const std::string& during, F&& f, int exit = kExitInvalid) {
    try {
      f();
    } catch (const Error& e) {
      error(e, during, e.code() == ErrorCode::ParseError ? kExitInputError : exit);
    }
  }

  void volume_bounds(const std::optional<BLDatum>& user_datum);
  void surface_bounds(const std::vector<SliceSamples>& samples);
  void fisher(const std::vector<SliceSamples>& samples);
  void verify();

  RunOutcome finish() {
    doc_["valid"] = exit_ == kExitOk;
    return {exit_, doc_};
  }

 private:
  OracleConfig oracle_config(const Vector& u) const {
    OracleConfig cfg;
    cfg.seed = spec_.seed;
    cfg.n_samples = spec_.mc_samples;
    const auto [a, b] = set_.support_interval(u);
    cfg.epsilon = spec_.epsilon ? *spec_.epsilon : 1e-3 * (b - a);
    cfg.grid_resolution = spec_.grid ? *spec_.grid : (set_.dim() <= 3 ? 512 : 64);
    return cfg;
  }

  double projection_volume(const Matrix& basis) const {
    if (basis.cols() == set_.dim()) return volume_;
    std::vector<ConvexPolytope> shadows;
    for (const auto& p : set_.pieces()) shadows.push_back(project(p, basis));
    return union_volume(shadows, std::max(set_.max_pieces(), shadows.size()));
  }

  void projection_upper_bound(const BLDatum& datum, const std::string& label);

  // Samples along every axis: the user's when given, else interval midpoints.
  std::vector<SliceSamples> axis_samples(const std::vector<SliceSamples>& samples) const {
    const int n = set_.dim();
    std::vector<SliceSamples> out;
    for (int i = 0; i < n; ++i) out.push_back({unit_axis(n, i), {}, {}});
    for (const auto& s : samples) {
      int axis = -1;
      if (is_axis(s.direction, axis) && out[axis].positions.empty()) out[axis] = s;
    }
    // axes the user did not sample fall back to midpoints
    for (int i = 0; i < n; ++i) {
      if (out[i].positions.empty()) out[i] = midpoint_samples(set_, unit_axis(n, i));
    }
    return out;
  }

  const RunSpec& spec_;
  const PolyconvexSet& set_;
  double volume_ = 0.0;
  double surface_ = 0.0;
  json doc_;
  int exit_ = kExitOk;
};

void Builder::projection_upper_bound(const BLDatum& datum, const std::string& label) {
  guarded("projection upper bound (" + label + ")", [&] {
    std::vector<double> proj;
    for (const auto& s : datum.subspaces()) proj.push_back(projection_volume(s.basis));
    const double mg = mg_optimize(datum, {.seed = spec_.seed});
    const double ub = volume_upper_bound_projections(proj, datum, mg);
    bound(make_bound_report("projection_upper_bound_" + label, "Brascamp-Lieb projection volume bound",
                            BoundKind::Upper, ub, volume_,
                            "projections=" + fmt(proj) + "; M_g=" + fmt(mg) + "; datum=" + label));
  });
}

void Builder::volume_bounds(const std::optional<BLDatum>& user_datum) {
  const int n = set_.dim();
  const BLDatum datum = user_datum ? *user_datum : BLDatum::axes(n);
  const std::string label = user_datum ? "given" : "axes";

  if (set_.size() == 1) {
    const auto& p = set_.pieces().front();
    guarded("maximal-slice lower bound", [&] {
      std::vector<double> smax;
      for (const auto& s : datum.subspaces()) smax.push_back(max_slice(p, s.basis));
      const double mg = mg_optimize(datum, {.seed = spec_.seed});
      const double lb = volume_lower_bound(smax, datum, mg);
      bound(make_bound_report("max_slice_lower_bound", "Brascamp-Lieb maximal-slice volume bound",
                              BoundKind::Lower, lb, volume_,
                              "S_max=" + fmt(smax) + "; M_g=" + fmt(mg) + "; datum=" + label));
    });
    guarded("slice product bound", [&] {
      // slices through the origin when it lies in the body, else through the
      // vertex centroid (the inequality is translation invariant)
      const Vector center = p.contains(Vector::Zero(n)) ? Vector(Vector::Zero(n)) : p.vertex_centroid();
      std::vector<double> slices;
      const PolyconvexSet single(p);
      for (int i = 0; i < n; ++i) slices.push_back(slice_volume(single, unit_axis(n, i), center(i)));
      bound(make_bound_report("meyer_lower_bound", "coordinate slice product bound", BoundKind::Lower,
                              meyer_bound(slices), volume_,
                              "slices=" + fmt(slices) + "; through=" + fmt(to_std(center))));
    });
  } else {
    doc_["notes"].push_back("slice-based volume lower bounds need a convex body; skipped for a union");
  }

  projection_upper_bound(datum, label);
  if (n >= 2 && !(user_datum && n == static_cast<int>(datum.size()))) {
    projection_upper_bound(BLDatum::coordinate_hyperplanes(n), "coordinate_hyperplanes");
  }
}

void Builder::surface_bounds(const std::vector<SliceSamples>& samples) {
  const int n = set_.dim();
  guarded("sampled surface bound", [&] {
    const auto per_axis = axis_samples(samples);
    for (const auto& s : per_axis) l1_fisher_sampled(s, set_);  // continuity check
    const double lb = surface_lower_bound(per_axis);
    std::string digest;
    for (int i = 0; i < n; ++i) {
      digest += "axis " + std::to_string(i) + ": positions=" + fmt(per_axis[i].positions) +
                " areas=" + fmt(per_axis[i].areas) + "; ";
    }
    bound(make_bound_report("sampled_surface_lower_bound", "axis slice-variation surface bound",
                            BoundKind::Lower, lb, surface_, digest));
    bound(make_bound_report("sampled_surface_lower_bound_per_volume",
                            "axis slice-variation surface bound over volume", BoundKind::Lower,
                            lb / volume_, surface_ / volume_, "volume=" + fmt(volume_)));
  });

  bool general = false;
  for (const auto& s : samples) {
    int axis = -1;
    if (!is_axis(s.direction, axis)) general = true;
  }
  if (general) {
    guarded("general-direction surface bound", [&] {
      std::vector<Vector> dirs;
      for (const auto& s : samples) {
        l1_fisher_sampled(s, set_);
        dirs.push_back(s.direction);
      }
      const double lb = surface_lower_bound_general(samples, volume_);
      bound(make_bound_report("general_direction_surface_lower_bound",
                              "slice-variation surface bound over arbitrary directions",
                              BoundKind::Lower, lb, surface_,
                              "directions=" + std::to_string(samples.size()) +
                                  "; C=" + fmt(direction_constant(dirs))));
    });
  }

  if (set_.size() == 1 && n >= 2) {
    guarded("projection surface bounds", [&] {
      const auto bm = betke_mcmullen_bounds(set_.pieces().front());
      const std::string digest = "projections=" + fmt(bm.projections);
      bound(make_bound_report("projection_surface_upper_bound", "coordinate projection surface bound",
                              BoundKind::Upper, bm.upper, surface_, digest));
      bound(make_bound_report("projection_surface_lower_bound",
                              "coordinate projection quadratic surface bound", BoundKind::Lower,
                              bm.lower, surface_, digest));
    });
  }
}

void Builder::fisher(const std::vector<SliceSamples>& samples) {
  const int n = set_.dim();
  std::vector<Vector> dirs;
  for (int i = 0; i < n; ++i) dirs.push_back(unit_axis(n, i));
  for (const auto& s : samples) {
    int axis = -1;
    if (!is_axis(s.direction, axis)) dirs.push_back(s.direction);
  }
  const auto per_axis = axis_samples(samples);

  json checks = json::array();
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const Vector& u = dirs[k];
    std::optional<double> closed, surface, sampled;
    guarded("closed form", [&] {
      const auto r = l1_fisher_piecewise(marginal_profile(set_, u), u);
      closed = r.value;
      doc_["fisher"].push_back(to_json(r));
    });
    guarded("surface form", [&] {
      const auto r = l1_fisher_surface_form(set_, u);
      surface = r.value;
      doc_["fisher"].push_back(to_json(r));
    });
    guarded("sampled bound", [&] {
      SliceSamples s;
      if (k < per_axis.size()) {
        s = per_axis[k];
      } else {
        for (const auto& x : samples) {
          if ((x.direction - u).norm() <= 1e-12) s = x;
        }
      }
      const auto r = l1_fisher_sampled(s, set_);
      sampled = r.value;
      doc_["fisher"].push_back(to_json(r));
    });
    guarded("perturbation quotient", [&] {
      FisherResult r;
      r.form = FisherForm::EpsilonQuotient;
      r.direction = u;
      const auto cfg = oracle_config(u);
      r.value = epsilon_tv_quotient(set_, u, cfg);
      r.diagnostics.push_back({cfg.epsilon, r.value});
      doc_["fisher"].push_back(to_json(r));
    });
    if (closed && sampled) {
      const bool ok = *sampled <= *closed + 1e-9;
      checks.push_back({{"name", "sampled <= closed form"}, {"direction", to_std(u)}, {"passed", ok}});
      if (!ok) exit_ = std::max(exit_, kExitInvalid);
    }
    if (closed && surface) {
      const bool ok = *closed <= *surface + 1e-8;
      checks.push_back({{"name", "closed form <= surface form"}, {"direction", to_std(u)}, {"passed", ok}});
      if (!ok) exit_ = std::max(exit_, kExitInvalid);
    }
  }
  guarded("total", [&] { doc_["fisher"].push_back(to_json(l1_fisher_total(set_))); });
  guarded("superadditivity", [&] {
    const auto rep = check_superadditivity(set_, dirs);
    doc_["superadditivity"] = {{"axis_marginal_sum", rep.axis_marginal_sum},
                               {"total", rep.total},
                               {"passed", true}};
  });
  doc_["fisher_checks"] = checks;
}

void Builder::verify() {
  const int n = set_.dim();
  json checks = json::array();
  auto check = [&](const std::string& name, double value, double reference, double tol, bool passed,
                   json extra = json::object()) {
    json c{{"name", name}, {"value", value}, {"reference", reference}, {"tolerance", tol}, {"passed", passed}};
    for (auto& [k, v] : extra.items()) c[k] = v;
    checks.push_back(c);
    if (!passed) exit_ = std::max(exit_, kExitInvalid);
  };

  guarded("Monte Carlo volume", [&] {
    const auto est = mc_volume(set_, oracle_config(unit_axis(n, 0)));
    const double tol = std::max(3.0 * est.std_error, 1e-9 * volume_);
    check("mc_volume", est.estimate, volume_, tol, std::abs(est.estimate - volume_) <= tol,
          {{"std_error", est.std_error}, {"samples", spec_.mc_samples}, {"seed", spec_.seed}});
  });
  if (n >= 2) {
    guarded("surface routes", [&] {
      const double b = boundary_area(set_);
      const double tol = 1e-9 * std::max(1.0, surface_);
      check("surface_valuation_vs_boundary", surface_, b, tol, std::abs(surface_ - b) <= tol);
    });
    for (int i = 0; i < n; ++i) {
      const Vector u = unit_axis(n, i);
      const json dir = to_std(u);
      double surface = 0.0;
      guarded("surface form", [&] { surface = l1_fisher_surface_form(set_, u).value; });
      guarded("marginal mass", [&] {
        const double mass = marginal_profile(set_, u).integrate_trapezoid(256);
        check("marginal_mass", mass, 1.0, 1e-6, std::abs(mass - 1.0) <= 1e-6, {{"direction", dir}});
      });
      guarded("perturbation quotient", [&] {
        const auto cfg = oracle_config(u);
        const double q = epsilon_tv_quotient(set_, u, cfg);
        check("epsilon_quotient_vs_surface_form", q, surface, 0.01 * surface,
              std::abs(q - surface) <= 0.01 * surface, {{"direction", dir}, {"epsilon", cfg.epsilon}});
      });
      guarded("slice-count integral", [&] {
        const auto cfg = oracle_config(u);
        const double v = nslice_integral(set_, i, cfg);
        check("slice_count_integral_vs_surface_form", v, surface, 0.01 * surface,
              std::abs(v - surface) <= 0.01 * surface, {{"direction", dir}, {"grid", cfg.grid_resolution}});
      });
    }
    guarded("superadditivity", [&] {
      const auto rep = check_superadditivity(set_);
      check("superadditivity", rep.axis_marginal_sum, rep.total, 1e-8, true);
    });
  }
  doc_["oracle"] = {{"seed", spec_.seed}, {"checks", checks}};
}

}  // namespace

RunOutcome run_report(const RunSpec& spec) {
  auto input_error = [&](const Error& e, const std::string& during) {
    RunOutcome out{kExitInputError, json::object()};
    out.document["command"] = std::string(to_string(spec.command));
    out.document["errors"] = json::array({{{"code", std::string(gtomo::to_string(e.code()))},
                                           {"during", during},
                                           {"message", e.what()}}});
    out.document["valid"] = false;
    return out;
  };

  std::optional<PolyconvexSet> set;
  std::optional<BLDatum> datum;
  std::vector<SliceSamples> samples;
  try {
    set = load_geometry(spec.geometry_path);
  } catch (const Error& e) {
    return input_error(e, "loading geometry");
  }
  try {
    if (spec.datum_path) {
      datum = load_datum(*spec.datum_path);
      if (datum->dim() != set->dim()) {
        throw Error(ErrorCode::DimensionError, "datum dimension differs from the geometry");
      }
      const auto status = validate_datum(*datum, spec.seed);
      if (status.status == FinitenessStatus::Infinite) {
        throw Error(ErrorCode::InvariantViolation, "datum is not finite: " + status.reason);
      }
    }
  } catch (const Error& e) {
    return input_error(e, "loading datum");
  }
  try {
    if (spec.samples_path) {
      samples = load_samples(*spec.samples_path);
      for (const auto& s : samples) {
        if (s.direction.size() != set->dim()) {
          throw Error(ErrorCode::DimensionError, "sample direction dimension differs from the geometry");
        }
      }
    }
  } catch (const Error& e) {
    return input_error(e, "loading samples");
  }

  try {
    Builder b(spec, *set);
    switch (spec.command) {
      case Command::VolumeBound: b.volume_bounds(datum); break;
      case Command::SurfaceBound: b.surface_bounds(samples); break;
      case Command::Fisher: b.fisher(samples); break;
      case Command::Verify: b.verify(); break;
      case Command::Report:
        b.volume_bounds(datum);
        b.surface_bounds(samples);
        b.fisher(samples);
        b.verify();
        break;
    }
    return b.finish();
  } catch (const Error& e) {
    auto out = input_error(e, "evaluating the body");
    out.exit_code = kExitInvalid;
    return out;
  }
}

std::string render(const json& doc, const std::string& format) {
  if (format != "csv") return doc.dump(2) + "\n";
  std::ostringstream out;
  out.precision(17);
  out << "section,name,kind,direction,value,reference,slack,valid\n";
  auto num = [&](const json& v) -> std::string {
    if (v.is_null()) return "";
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return s.str();
  };
  auto dir = [](const json& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::ostringstream x;
      x << v[i].get<double>();
      s += (i ? " " : "") + x.str();
    }
    return s;
  };
  if (doc.contains("bounds")) {
    for (const auto& b : doc["bounds"]) {
      out << "bound," << b["bound_name"].get<std::string>() << ',' << b["kind"].get<std::string>() << ",,"
          << num(b["bound_value"]) << ',' << num(b["true_value"]) << ',' << num(b["slack"]) << ','
          << (b["valid"].get<bool>() ? "true" : "false") << '\n';
    }
  }
  if (doc.contains("fisher")) {
    for (const auto& f : doc["fisher"]) {
      out << "fisher," << f["form"].get<std::string>() << ",," << dir(f["direction"]) << ','
          << num(f["value"]) << ",,,\n";
    }
  }
  if (doc.contains("oracle")) {
    for (const auto& c : doc["oracle"]["checks"]) {
      out << "check," << c["name"].get<std::string>() << ",,"
          << (c.contains("direction") ? dir(c["direction"]) : "") << ',' << num(c["value"]) << ','
          << num(c["reference"]) << ",," << (c["passed"].get<bool>() ? "true" : "false") << '\n';
    }
  }
  if (doc.contains("errors")) {
    for (const auto& e : doc["errors"]) {
      out << "error," << e["code"].get<std::string>() << ",,,,,,false\n";
    }
  }
  return out.str();
}

}  // namespace gtomo::cli
