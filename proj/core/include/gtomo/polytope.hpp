#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gtomo/types.hpp"

namespace gtomo {

/// Closed half-space {x : normal . x <= offset}. Normals are stored with unit
/// Euclidean norm.
struct Halfspace {
  Vector normal;
  double offset = 0.0;
};

/// A facet of a full-dimensional polytope: outward unit normal, the offset of
/// its supporting hyperplane and its (n-1)-volume.
struct Facet {
  Vector normal;
  double offset = 0.0;
  double area = 0.0;
};

/// An affine flat p + span(B) with orthonormal columns B.
class AffineFlat {
 public:
  AffineFlat(Vector basepoint, Matrix basis, Tolerance tol = {});

  /// The hyperplane {x : x . u = t}; u must be a unit vector.
  static AffineFlat hyperplane(const Vector& u, double t, Tolerance tol = {});

  const Vector& basepoint() const { return basepoint_; }
  const Matrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return static_cast<int>(basis_.rows()); }

  Vector to_ambient(const Vector& local) const { return basepoint_ + basis_ * local; }
  Vector to_local(const Vector& x) const { return basis_.transpose() * (x - basepoint_); }

 private:
  Vector basepoint_;
  Matrix basis_;
};

/// A bounded, full-dimensional convex polytope in H-representation.
///
/// Construction validates boundedness, feasibility and full dimension, then
/// precomputes the vertex set, the facet list and the volume, so every
/// accessor is a const read and instances may be shared across threads.
/// The stored half-spaces are the facet-defining ones (redundant input
/// constraints are dropped).
class ConvexPolytope {
 public:
  /// Throws Error{UnboundedPolytope | EmptyPolytope | DegeneratePolytope}.
  static ConvexPolytope from_halfspaces(int dim, std::vector<Halfspace> halfspaces,
                                        Tolerance tol = {});
  /// Convex hull of a point cloud. Throws DegeneratePolytope when the points
  /// do not affinely span their ambient space.
  static ConvexPolytope from_vertices(const PointList& points, Tolerance tol = {});

  static ConvexPolytope box(const Vector& lo, const Vector& hi, Tolerance tol = {});
  /// {x : |x_1| + ... + |x_n| <= radius}
  static ConvexPolytope cross_polytope(int dim, double radius = 1.0, Tolerance tol = {});
  /// {x >= 0, sum x_i <= 1}
  static ConvexPolytope standard_simplex(int dim, Tolerance tol = {});

  int dim() const { return dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const PointList& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  double volume() const { return volume_; }
  double surface_area() const;
  Tolerance tolerance() const { return tol_; }

  /// Mean of the vertices; an interior point.
  Vector vertex_centroid() const;
  /// [min, max] of u . x over the polytope.
  std::pair<double, double> support_interval(const Vector& u) const;
  bool contains(const Vector& x, double slack = 0.0) const;

  /// Image under x -> linear * x + shift; `linear` must be invertible.
  ConvexPolytope transformed(const Matrix& linear, const Vector& shift) const;
  ConvexPolytope translated(const Vector& shift) const;
  ConvexPolytope scaled(double factor) const;

  /// Builds a polytope from constraints already known to describe a bounded
  /// set. Returns nullopt when the set is empty or not full-dimensional.
  static std::optional<ConvexPolytope> try_from_bounded(int dim,
                                                        std::vector<Halfspace> halfspaces,
                                                        Tolerance tol = {});

 private:
  ConvexPolytope() = default;
  static std::optional<ConvexPolytope> assemble(int dim, std::vector<Halfspace> halfspaces,
                                                PointList vertices, Tolerance tol);

  int dim_ = 0;
  Tolerance tol_{};
  std::vector<Halfspace> halfspaces_;
  PointList vertices_;
  std::vector<Facet> facets_;
  double volume_ = 0.0;
};

/// All extreme points of P (deduplicated, cached at construction).
inline const PointList& enumerate_vertices(const ConvexPolytope& p) { return p.vertices(); }
inline double volume(const ConvexPolytope& p) { return p.volume(); }
inline const std::vector<Facet>& facets(const ConvexPolytope& p) { return p.facets(); }

/// P intersected with a flat, expressed in the flat's coordinates. Returns
/// nullopt when the intersection is empty or lower-dimensional than the flat.
std::optional<ConvexPolytope> intersect_flat(const ConvexPolytope& p, const AffineFlat& flat);

/// k-volume of P cut by a k-flat; 0 for empty or lower-dimensional sections.
double section_volume(const ConvexPolytope& p, const AffineFlat& flat);

/// Orthogonal projection onto span(basis) in the basis coordinates.
ConvexPolytope project(const ConvexPolytope& p, const Matrix& basis);

/// Intersection of two polytopes; nullopt when empty or not full-dimensional.
std::optional<ConvexPolytope> intersect(const ConvexPolytope& a, const ConvexPolytope& b);

}  // namespace gtomo
