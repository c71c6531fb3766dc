#pragma once

// Low-level H-representation machinery shared by the polytope, union and
// slicing code. Nothing here validates boundedness unless stated.

#include <optional>
#include <vector>

#include "gtomo/polytope.hpp"

namespace gtomo::kernel {

/// Normalizes every normal to unit length and merges parallel duplicates
/// (keeping the tightest offset). A zero normal with a negative offset makes
/// the system infeasible (nullopt); a zero normal otherwise is dropped.
std::optional<std::vector<Halfspace>> normalize(int dim, const std::vector<Halfspace>& hs,
                                                double tol);

/// Vertices of {x : A x <= b} by pivoting over every dim-subset of the
/// constraints and keeping feasible, deduplicated solutions. Empty for an
/// infeasible system; only meaningful for bounded systems.
PointList enumerate_vertices(int dim, const std::vector<Halfspace>& hs, double tol);

/// True when {d : A d <= 0} = {0}.
bool is_bounded(int dim, const std::vector<Halfspace>& hs, double tol);

struct AffineHull {
  Vector base;
  Matrix basis;  // orthonormal columns, ambient x k
  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Affine hull of a nonempty point set: base point plus orthonormal basis.
AffineHull affine_hull(const PointList& points, double tol);
int affine_dimension(const PointList& points, double tol);

/// Orthonormal basis (n x (n-k)) of the orthogonal complement of span(basis).
Matrix orthogonal_complement(const Matrix& basis);
Matrix orthogonal_complement(const Vector& u);

/// Facet-defining half-spaces of the hull of a full-dimensional point set.
std::vector<Halfspace> hull_halfspaces(const PointList& points, double tol);

/// Rewrites half-spaces for the flat x = base + B y. Returns nullopt when a
/// constraint orthogonal to the flat excludes it entirely.
std::optional<std::vector<Halfspace>> restrict_to_flat(const std::vector<Halfspace>& hs,
                                                       const Vector& base, const Matrix& basis,
                                                       double tol);

struct Measure {
  double volume = 0.0;
  std::vector<Facet> facets;
  std::vector<int> facet_constraint;  // index into the input half-spaces
};

/// Volume and facets of a full-dimensional polytope given its constraints and
/// vertex set, by the cone decomposition over facets from an interior point,
/// recursing into each facet in its own orthonormal coordinates.
Measure measure(int dim, const std::vector<Halfspace>& hs, const PointList& vertices, double tol);

/// Realized intersection of an arbitrary collection of constraints with a
/// known-bounded feasible region.
struct Realized {
  std::vector<Halfspace> halfspaces;
  PointList vertices;
  int affine_dim = -1;  // -1 when empty
};

Realized realize(int dim, const std::vector<Halfspace>& hs, double tol);

/// (affine_dim)-volume of the hull of a point set measured inside its own
/// affine hull. A single point has measure 1.
double intrinsic_measure(const PointList& points, double tol);

}  // namespace gtomo::kernel
