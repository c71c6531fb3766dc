#pragma once

#include <vector>

#include "gtomo/density.hpp"
#include "gtomo/polyconvex.hpp"
#include "gtomo/polytope.hpp"

namespace gtomo {

/// Slice areas of a body measured by hyperplanes {x . direction = position}.
struct SliceSamples {
  Vector direction;
  std::vector<double> positions;  // strictly increasing
  std::vector<double> areas;      // unnormalized (n-1)-volumes, >= 0

  /// Throws InvariantViolation when the invariants above do not hold.
  void validate() const;
};

/// (n-1)-volume of U cut by {x . u = t}: pieces are sliced individually and
/// the sections combined by inclusion-exclusion inside the hyperplane.
double slice_volume(const PolyconvexSet& set, const Vector& u, double t);

/// Sorted, deduplicated projections onto u of the vertices of every
/// full-dimensional intersection of pieces. The marginal along u is a
/// polynomial of degree <= n-1 between consecutive entries.
std::vector<double> marginal_breakpoints(const PolyconvexSet& set, const Vector& u);

/// The density of X . u for X uniform on U.
///
/// On each interval the marginal is recovered exactly by interpolating n+1
/// slice volumes at Chebyshev nodes, so the one-sided limits at breakpoints are
/// the interpolant's endpoint values. The value at each breakpoint is the
/// closed-set slice there.
PiecewiseDensity marginal_profile(const PolyconvexSet& set, const Vector& u);

struct MaxSlice {
  double value = 0.0;
  Vector position;  // maximizer t in the coordinates of the subspace basis
};

/// Largest slice of P by translates of the orthogonal complement of
/// span(basis), where basis is n x r orthonormal with 1 <= r < n.
///
/// r = 1: ternary search on V(t)^(1/(n-1)) over the support interval, then
/// the vertex projections are checked as candidates too.
/// r >= 2: cyclic coordinate ternary search (plus a pattern move per sweep)
/// on V^(1/(n-r)) over the projection of P.
MaxSlice max_slice_at(const ConvexPolytope& p, const Matrix& basis);
double max_slice(const ConvexPolytope& p, const Matrix& basis);

/// Number of disjoint closed intervals in U intersected with the line
/// parallel to e_axis through `base`, where base lists the other n-1
/// coordinates in order. Touching intervals count as one.
int line_interval_count(const PolyconvexSet& set, int axis, const Vector& base);

/// Slice areas of U at the given positions along u.
SliceSamples sample_slices(const PolyconvexSet& set, const Vector& u, std::vector<double> positions);

/// One sample at the midpoint of every interval between consecutive marginal
/// breakpoints; all such positions are continuity points of the marginal.
SliceSamples midpoint_samples(const PolyconvexSet& set, const Vector& u);

}  // namespace gtomo
