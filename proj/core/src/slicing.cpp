#include "gtomo/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gtomo/error.hpp"

namespace gtomo {

namespace {

void require_unit(const Vector& u, int n) {
  if (u.size() != n) throw Error(ErrorCode::DimensionError, "direction has the wrong dimension");
  if (!u.allFinite() || std::abs(u.norm() - 1.0) > 1e-8) {
    throw Error(ErrorCode::InvariantViolation, "direction must be a unit vector");
  }
}

void require_slicing_dim(int n) {
  if (n < 2) throw Error(ErrorCode::DimensionError, "slicing needs dimension >= 2");
}

// Barycentric interpolant through Chebyshev points of the first kind.
struct ChebyshevInterpolant {
  std::vector<double> nodes, values, weights;

  double operator()(double t) const {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double d = t - nodes[k];
      if (d == 0.0) return values[k];
      const double w = weights[k] / d;
      num += w * values[k];
      den += w;
    }
    return num / den;
  }
};

template <class F>
ChebyshevInterpolant interpolate(const F& f, double a, double b, int count) {
  ChebyshevInterpolant p;
  for (int k = 0; k < count; ++k) {
    const double theta = (2.0 * k + 1.0) * std::numbers::pi / (2.0 * count);
    p.nodes.push_back(0.5 * (a + b) + 0.5 * (b - a) * std::cos(theta));
    p.values.push_back(f(p.nodes.back()));
    p.weights.push_back((k % 2 == 0 ? 1.0 : -1.0) * std::sin(theta));
  }
  return p;
}

template <class F>
double ternary_max(const F& g, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (g(m1) < g(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  return 0.5 * (lo + hi);
}

// Interior turning points of f on [a, b], located on a uniform grid and
// refined by ternary search. Changes smaller than `tol` are ignored.
template <class F>
std::vector<double> turning_points(const F& f, double a, double b, double tol, int grid = 64) {
  std::vector<double> ts(grid), fs(grid);
  for (int k = 0; k < grid; ++k) {
    ts[k] = a + (b - a) * k / (grid - 1);
    fs[k] = f(ts[k]);
  }
  std::vector<double> out;
  int dir = 0;
  int anchor = 0;  // index of the running extremum in the current direction
  for (int k = 1; k < grid; ++k) {
    const double step = fs[k] - fs[anchor];
    if (std::abs(step) <= tol) continue;
    const int d = step > 0 ? 1 : -1;
    if (dir != 0 && d != dir) {
      const double lo = ts[std::max(anchor - 1, 0)];
      const double hi = ts[std::min(anchor + 1, grid - 1)];
      const double sign = dir;
      out.push_back(ternary_max([&](double t) { return sign * f(t); }, lo, hi, 1e-12 * (b - a)));
    }
    dir = d;
    anchor = k;
  }
  return out;
}

}  // namespace

void SliceSamples::validate() const {
  if (direction.size() == 0 || !direction.allFinite() || std::abs(direction.norm() - 1.0) > 1e-8) {
    throw Error(ErrorCode::InvariantViolation, "slice samples need a unit direction");
  }
  if (positions.size() != areas.size()) {
    throw Error(ErrorCode::InvariantViolation, "positions and areas differ in length");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!std::isfinite(positions[i])) throw Error(ErrorCode::InvariantViolation, "position is not finite");
    if (i > 0 && !(positions[i] > positions[i - 1])) {
      throw Error(ErrorCode::InvariantViolation, "positions must be strictly increasing");
    }
    if (!std::isfinite(areas[i]) || areas[i] < 0.0) {
      throw Error(ErrorCode::InvariantViolation, "areas must be finite and nonnegative");
    }
  }
}

double slice_volume(const PolyconvexSet& set, const Vector& u, double t) {
  const int n = set.dim();
  require_slicing_dim(n);
  require_unit(u, n);
  const auto tol = set.tolerance();
  const AffineFlat flat = AffineFlat::hyperplane(u, t, tol);
  std::vector<ConvexPolytope> sections;
  for (const auto& piece : set.pieces()) {
    const auto [lo, hi] = piece.support_interval(u);
    if (t < lo - tol.geom || t > hi + tol.geom) continue;
    if (auto s = intersect_flat(piece, flat)) sections.push_back(*std::move(s));
  }
  return union_volume(sections, set.max_pieces());
}

std::vector<double> marginal_breakpoints(const PolyconvexSet& set, const Vector& u) {
  const int n = set.dim();
  require_unit(u, n);
  std::vector<double> pts;
  for_each_intersection(set.pieces(), set.max_pieces(), [&](const IntersectionTerm& term) {
    if (term.body.affine_dim < n) return false;
    for (const auto& v : term.body.vertices) pts.push_back(u.dot(v));
    return true;
  });
  std::sort(pts.begin(), pts.end());
  const double width = pts.back() - pts.front();
  const double eps = set.tolerance().geom * std::max(1.0, width);
  std::vector<double> out;
  for (double p : pts) {
    if (out.empty() || p - out.back() > eps) out.push_back(p);
  }
  return out;
}

PiecewiseDensity marginal_profile(const PolyconvexSet& set, const Vector& u) {
  const int n = set.dim();
  require_slicing_dim(n);
  const double total = union_volume(set);
  const auto coarse = marginal_breakpoints(set, u);
  auto density = [&](double t) { return slice_volume(set, u, t) / total; };

  // Scale for ignoring round-off when looking for turning points.
  double scale = 0.0;
  std::vector<ChebyshevInterpolant> fits;
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    fits.push_back(interpolate(density, coarse[i], coarse[i + 1], n + 1));
    for (double v : fits.back().values) scale = std::max(scale, std::abs(v));
  }
  const double flat_tol = 1e-10 * std::max(scale, 1e-300);

  std::vector<double> breakpoints;
  std::vector<PiecewiseDensity::Piece> pieces;
  std::vector<double> point_values;
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    const auto& fit = fits[i];
    breakpoints.push_back(coarse[i]);
    point_values.push_back(density(coarse[i]));
    // Split at interior extrema so every interval is monotone.
    for (double t : turning_points(fit, coarse[i], coarse[i + 1], flat_tol)) {
      if (t <= breakpoints.back() || t >= coarse[i + 1]) continue;
      pieces.push_back(fit);
      breakpoints.push_back(t);
      point_values.push_back(fit(t));
    }
    pieces.push_back(fit);
  }
  breakpoints.push_back(coarse.back());
  point_values.push_back(density(coarse.back()));
  return PiecewiseDensity(std::move(breakpoints), std::move(pieces), std::move(point_values));
}

MaxSlice max_slice_at(const ConvexPolytope& p, const Matrix& basis) {
  const int n = p.dim();
  const int r = static_cast<int>(basis.cols());
  if (basis.rows() != n || r < 1 || r >= n) {
    throw Error(ErrorCode::DimensionError, "max_slice needs an n x r basis with 1 <= r < n");
  }
  if ((basis.transpose() * basis - Matrix::Identity(r, r)).lpNorm<Eigen::Infinity>() > 1e-8) {
    throw Error(ErrorCode::InvariantViolation, "subspace basis is not orthonormal");
  }
  const auto tol = p.tolerance();
  const double root = 1.0 / (n - r);

  if (r == 1) {
    const Vector u = basis.col(0);
    auto value = [&](double t) { return section_volume(p, AffineFlat::hyperplane(u, t, tol)); };
    const auto [lo, hi] = p.support_interval(u);
    const double t = ternary_max([&](double s) { return std::pow(value(s), root); }, lo, hi,
                                 1e-8 * (hi - lo));
    MaxSlice best{value(t), Vector::Constant(1, t)};
    for (const auto& v : p.vertices()) {
      const double s = u.dot(v);
      const double a = value(s);
      if (a > best.value) best = {a, Vector::Constant(1, s)};
    }
    return best;
  }

  const Matrix complement = kernel::orthogonal_complement(basis);
  const ConvexPolytope shadow = project(p, basis);
  auto value = [&](const Vector& s) {
    return section_volume(p, AffineFlat(basis * s, complement, tol));
  };
  auto g = [&](const Vector& s) { return std::pow(value(s), root); };

  double width = 0.0;
  for (int k = 0; k < r; ++k) {
    const auto [lo, hi] = shadow.support_interval(unit_axis(r, k));
    width = std::max(width, hi - lo);
  }
  const double step_tol = 1e-8 * width;

  // Maximize g along s + lambda d within the shadow.
  auto line_search = [&](const Vector& s, const Vector& d) -> Vector {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& h : shadow.halfspaces()) {
      const double ad = h.normal.dot(d);
      const double slack = h.offset - h.normal.dot(s);
      if (std::abs(ad) < 1e-14) continue;
      if (ad > 0) {
        hi = std::min(hi, slack / ad);
      } else {
        lo = std::max(lo, slack / ad);
      }
    }
    if (!(hi > lo)) return s;
    const double lambda =
        ternary_max([&](double l) { return g(s + l * d); }, lo, hi, 1e-3 * step_tol);
    const Vector cand = s + lambda * d;
    return g(cand) >= g(s) ? cand : s;
  };

  Vector s = shadow.vertex_centroid();
  for (int sweep = 0; sweep < 200; ++sweep) {
    const Vector start = s;
    for (int k = 0; k < r; ++k) s = line_search(s, unit_axis(r, k));
    const Vector move = s - start;
    if (move.norm() < step_tol) break;
    s = line_search(s, move / move.norm());
  }
  return {value(s), s};
}

double max_slice(const ConvexPolytope& p, const Matrix& basis) { return max_slice_at(p, basis).value; }

int line_interval_count(const PolyconvexSet& set, int axis, const Vector& base) {
  const int n = set.dim();
  if (axis < 0 || axis >= n || base.size() != n - 1) {
    throw Error(ErrorCode::DimensionError, "line needs an axis in range and n-1 base coordinates");
  }
  const double tol = set.tolerance().geom;
  Vector point = Vector::Zero(n);
  for (int k = 0, j = 0; k < n; ++k) {
    if (k != axis) point(k) = base(j++);
  }

  std::vector<std::pair<double, double>> chords;
  for (const auto& piece : set.pieces()) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool empty = false;
    for (const auto& h : piece.halfspaces()) {
      const double a = h.normal(axis);
      const double rest = h.offset - h.normal.dot(point);
      if (std::abs(a) < 1e-14) {
        if (rest < -tol * (1.0 + std::abs(h.offset))) empty = true;
        continue;
      }
      if (a > 0) {
        hi = std::min(hi, rest / a);
      } else {
        lo = std::max(lo, rest / a);
      }
    }
    if (!empty && lo <= hi + tol) chords.emplace_back(lo, std::max(lo, hi));
  }
  std::sort(chords.begin(), chords.end());
  int count = 0;
  double reach = -std::numeric_limits<double>::infinity();
  for (const auto& [lo, hi] : chords) {
    if (count == 0 || lo > reach + tol) ++count;
    reach = std::max(reach, hi);
  }
  return count;
}

SliceSamples sample_slices(const PolyconvexSet& set, const Vector& u, std::vector<double> positions) {
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  SliceSamples s{u, std::move(positions), {}};
  s.areas.reserve(s.positions.size());
  for (double t : s.positions) s.areas.push_back(slice_volume(set, u, t));
  return s;
}

SliceSamples midpoint_samples(const PolyconvexSet& set, const Vector& u) {
  const auto bp = marginal_breakpoints(set, u);
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) mids.push_back(0.5 * (bp[i] + bp[i + 1]));
  return sample_slices(set, u, std::move(mids));
}

}  // namespace gtomo
