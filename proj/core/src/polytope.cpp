#include "gtomo/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtomo/error.hpp"
#include "gtomo/kernel.hpp"

namespace gtomo {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorCode::EmptyPolytope: return "EmptyPolytope";
    case ErrorCode::DegeneratePolytope: return "DegeneratePolytope";
    case ErrorCode::PieceCountTooLarge: return "PieceCountTooLarge";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::NonMonotoneInterval: return "NonMonotoneInterval";
    case ErrorCode::DiscontinuousSamplePoint: return "DiscontinuousSamplePoint";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::DegenerateWeights: return "DegenerateWeights";
    case ErrorCode::TooManyDirections: return "TooManyDirections";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::SuperadditivityViolation: return "SuperadditivityViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

AffineFlat::AffineFlat(Vector basepoint, Matrix basis, Tolerance tol)
    : basepoint_(std::move(basepoint)), basis_(std::move(basis)) {
  if (basepoint_.size() != basis_.rows()) {
    throw Error(ErrorCode::DimensionError, "flat basepoint and basis disagree on dimension");
  }
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw Error(ErrorCode::DimensionError, "flat dimension must lie in [1, ambient]");
  }
  const Matrix gram = basis_.transpose() * basis_;
  const double err =
      (gram - Matrix::Identity(basis_.cols(), basis_.cols())).lpNorm<Eigen::Infinity>();
  if (err > std::max(tol.geom, 1e-12) * 10.0) {
    throw Error(ErrorCode::InvariantViolation, "flat basis is not orthonormal");
  }
}

AffineFlat AffineFlat::hyperplane(const Vector& u, double t, Tolerance tol) {
  if (std::abs(u.norm() - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvariantViolation, "hyperplane direction must be a unit vector");
  }
  return AffineFlat(u * t, kernel::orthogonal_complement(u), tol);
}

std::optional<ConvexPolytope> ConvexPolytope::assemble(int dim, std::vector<Halfspace> halfspaces,
                                                       PointList vertices, Tolerance tol) {
  auto measured = kernel::measure(dim, halfspaces, vertices, tol.geom);
  if (!(measured.volume > 0.0)) return std::nullopt;

  ConvexPolytope p;
  p.dim_ = dim;
  p.tol_ = tol;
  p.vertices_ = std::move(vertices);
  p.volume_ = measured.volume;
  p.facets_ = std::move(measured.facets);
  for (std::size_t f = 0; f < p.facets_.size(); ++f) {
    const int j = measured.facet_constraint[f];
    if (j >= 0) {
      p.halfspaces_.push_back(halfspaces[j]);
    } else {
      p.halfspaces_.push_back({p.facets_[f].normal, p.facets_[f].offset});
    }
  }
  return p;
}

std::optional<ConvexPolytope> ConvexPolytope::try_from_bounded(int dim,
                                                               std::vector<Halfspace> halfspaces,
                                                               Tolerance tol) {
  auto realized = kernel::realize(dim, halfspaces, tol.geom);
  if (realized.affine_dim < dim) return std::nullopt;
  return assemble(dim, std::move(realized.halfspaces), std::move(realized.vertices), tol);
}

ConvexPolytope ConvexPolytope::from_halfspaces(int dim, std::vector<Halfspace> halfspaces,
                                               Tolerance tol) {
  if (dim < 1) throw Error(ErrorCode::DimensionError, "dimension must be positive");
  for (const auto& h : halfspaces) {
    if (h.normal.size() != dim) {
      throw Error(ErrorCode::DimensionError, "half-space normal has wrong dimension");
    }
    if (!(h.normal.norm() > tol.geom) || !std::isfinite(h.offset)) {
      throw Error(ErrorCode::InvariantViolation, "half-space normal must be nonzero and finite");
    }
  }
  auto normalized = kernel::normalize(dim, halfspaces, tol.geom);
  if (!normalized) throw Error(ErrorCode::EmptyPolytope, "constraints are infeasible");
  if (!kernel::is_bounded(dim, *normalized, tol.geom)) {
    throw Error(ErrorCode::UnboundedPolytope, "constraints admit a recession direction");
  }
  auto realized = kernel::realize(dim, *normalized, tol.geom);
  if (realized.affine_dim < 0) throw Error(ErrorCode::EmptyPolytope, "constraints are infeasible");
  if (realized.affine_dim < dim) {
    throw Error(ErrorCode::DegeneratePolytope,
                "affine hull has dimension " + std::to_string(realized.affine_dim) + " < " +
                    std::to_string(dim));
  }
  auto p = assemble(dim, std::move(realized.halfspaces), std::move(realized.vertices), tol);
  if (!p) throw Error(ErrorCode::DegeneratePolytope, "polytope has zero volume");
  return *std::move(p);
}

ConvexPolytope ConvexPolytope::from_vertices(const PointList& points, Tolerance tol) {
  if (points.empty()) throw Error(ErrorCode::EmptyPolytope, "no points given");
  const int dim = static_cast<int>(points.front().size());
  if (dim < 1) throw Error(ErrorCode::DimensionError, "dimension must be positive");
  for (const auto& p : points) {
    if (p.size() != dim) throw Error(ErrorCode::DimensionError, "points disagree on dimension");
    if (!p.allFinite()) throw Error(ErrorCode::InvariantViolation, "non-finite coordinate");
  }
  if (kernel::affine_dimension(points, tol.geom) < dim) {
    throw Error(ErrorCode::DegeneratePolytope, "points do not span the ambient space");
  }
  auto p = try_from_bounded(dim, kernel::hull_halfspaces(points, tol.geom), tol);
  if (!p) throw Error(ErrorCode::DegeneratePolytope, "hull has zero volume");
  return *std::move(p);
}

ConvexPolytope ConvexPolytope::box(const Vector& lo, const Vector& hi, Tolerance tol) {
  const int dim = static_cast<int>(lo.size());
  if (hi.size() != dim || dim < 1) throw Error(ErrorCode::DimensionError, "box bounds mismatch");
  for (int i = 0; i < dim; ++i) {
    if (!(hi(i) > lo(i))) throw Error(ErrorCode::DegeneratePolytope, "box side must be positive");
  }
  std::vector<Halfspace> hs;
  for (int i = 0; i < dim; ++i) {
    hs.push_back({unit_axis(dim, i), hi(i)});
    hs.push_back({-unit_axis(dim, i), -lo(i)});
  }
  PointList corners;
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    Vector c(dim);
    for (int i = 0; i < dim; ++i) c(i) = (mask >> i) & 1u ? hi(i) : lo(i);
    corners.push_back(c);
  }
  return *assemble(dim, std::move(hs), std::move(corners), tol);
}

ConvexPolytope ConvexPolytope::cross_polytope(int dim, double radius, Tolerance tol) {
  if (dim < 1) throw Error(ErrorCode::DimensionError, "dimension must be positive");
  if (!(radius > 0)) throw Error(ErrorCode::DegeneratePolytope, "radius must be positive");
  std::vector<Halfspace> hs;
  const double inv = 1.0 / std::sqrt(static_cast<double>(dim));
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    Vector a(dim);
    for (int i = 0; i < dim; ++i) a(i) = (mask >> i) & 1u ? -inv : inv;
    hs.push_back({a, radius * inv});
  }
  PointList vertices;
  for (int i = 0; i < dim; ++i) {
    vertices.push_back(radius * unit_axis(dim, i));
    vertices.push_back(-radius * unit_axis(dim, i));
  }
  return *assemble(dim, std::move(hs), std::move(vertices), tol);
}

ConvexPolytope ConvexPolytope::standard_simplex(int dim, Tolerance tol) {
  if (dim < 1) throw Error(ErrorCode::DimensionError, "dimension must be positive");
  std::vector<Halfspace> hs;
  for (int i = 0; i < dim; ++i) hs.push_back({-unit_axis(dim, i), 0.0});
  const double inv = 1.0 / std::sqrt(static_cast<double>(dim));
  hs.push_back({Vector::Constant(dim, inv), inv});
  PointList vertices{Vector::Zero(dim)};
  for (int i = 0; i < dim; ++i) vertices.push_back(unit_axis(dim, i));
  return *assemble(dim, std::move(hs), std::move(vertices), tol);
}

double ConvexPolytope::surface_area() const {
  double total = 0.0;
  for (const auto& f : facets_) total += f.area;
  return total;
}

Vector ConvexPolytope::vertex_centroid() const {
  Vector c = Vector::Zero(dim_);
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

std::pair<double, double> ConvexPolytope::support_interval(const Vector& u) const {
  double lo = u.dot(vertices_.front()), hi = lo;
  for (const auto& v : vertices_) {
    const double s = u.dot(v);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return {lo, hi};
}

bool ConvexPolytope::contains(const Vector& x, double slack) const {
  for (const auto& h : halfspaces_) {
    if (h.normal.dot(x) > h.offset + slack) return false;
  }
  return true;
}

ConvexPolytope ConvexPolytope::transformed(const Matrix& linear, const Vector& shift) const {
  if (linear.rows() != dim_ || linear.cols() != dim_ || shift.size() != dim_) {
    throw Error(ErrorCode::DimensionError, "transform does not match polytope dimension");
  }
  Eigen::FullPivLU<Matrix> lu(linear);
  if (!lu.isInvertible()) throw Error(ErrorCode::DegeneratePolytope, "transform is singular");
  const Matrix inv_t = lu.inverse().transpose();
  std::vector<Halfspace> hs;
  hs.reserve(halfspaces_.size());
  for (const auto& h : halfspaces_) {
    Vector a = inv_t * h.normal;
    double b = h.offset + a.dot(shift);
    const double norm = a.norm();
    hs.push_back({a / norm, b / norm});
  }
  PointList vertices;
  vertices.reserve(vertices_.size());
  for (const auto& v : vertices_) vertices.push_back(linear * v + shift);
  auto p = assemble(dim_, std::move(hs), std::move(vertices), tol_);
  if (!p) throw Error(ErrorCode::DegeneratePolytope, "transformed polytope is degenerate");
  return *std::move(p);
}

ConvexPolytope ConvexPolytope::translated(const Vector& shift) const {
  return transformed(Matrix::Identity(dim_, dim_), shift);
}

ConvexPolytope ConvexPolytope::scaled(double factor) const {
  if (!(factor > 0)) throw Error(ErrorCode::InvariantViolation, "scale factor must be positive");
  return transformed(factor * Matrix::Identity(dim_, dim_), Vector::Zero(dim_));
}

std::optional<ConvexPolytope> intersect_flat(const ConvexPolytope& p, const AffineFlat& flat) {
  if (flat.ambient_dim() != p.dim()) {
    throw Error(ErrorCode::DimensionError, "flat and polytope live in different spaces");
  }
  const double tol = p.tolerance().geom;
  auto local = kernel::restrict_to_flat(p.halfspaces(), flat.basepoint(), flat.basis(), tol);
  if (!local) return std::nullopt;
  return ConvexPolytope::try_from_bounded(flat.dim(), std::move(*local), p.tolerance());
}

double section_volume(const ConvexPolytope& p, const AffineFlat& flat) {
  const auto section = intersect_flat(p, flat);
  return section ? section->volume() : 0.0;
}

ConvexPolytope project(const ConvexPolytope& p, const Matrix& basis) {
  if (basis.rows() != p.dim() || basis.cols() < 1) {
    throw Error(ErrorCode::DimensionError, "projection basis does not match polytope");
  }
  const Matrix gram = basis.transpose() * basis;
  if ((gram - Matrix::Identity(basis.cols(), basis.cols())).lpNorm<Eigen::Infinity>() > 1e-8) {
    throw Error(ErrorCode::InvariantViolation, "projection basis is not orthonormal");
  }
  PointList image;
  image.reserve(p.vertices().size());
  for (const auto& v : p.vertices()) image.push_back(basis.transpose() * v);
  return ConvexPolytope::from_vertices(image, p.tolerance());
}

std::optional<ConvexPolytope> intersect(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionError, "dimension mismatch");
  std::vector<Halfspace> hs = a.halfspaces();
  hs.insert(hs.end(), b.halfspaces().begin(), b.halfspaces().end());
  return ConvexPolytope::try_from_bounded(a.dim(), std::move(hs), a.tolerance());
}

}  // namespace gtomo
