#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gtomo/kernel.hpp"
#include "gtomo/polytope.hpp"

namespace gtomo {

inline constexpr std::size_t kDefaultMaxPieces = 20;

/// A finite union of full-dimensional convex polytopes in a common space.
class PolyconvexSet {
 public:
  explicit PolyconvexSet(std::vector<ConvexPolytope> pieces,
                         std::size_t max_pieces = kDefaultMaxPieces);
  explicit PolyconvexSet(ConvexPolytope piece);

  int dim() const { return pieces_.front().dim(); }
  std::size_t size() const { return pieces_.size(); }
  const std::vector<ConvexPolytope>& pieces() const { return pieces_; }
  std::size_t max_pieces() const { return max_pieces_; }
  Tolerance tolerance() const { return pieces_.front().tolerance(); }

  bool contains(const Vector& x, double slack = 0.0) const;
  /// [min, max] of u . x over the union.
  std::pair<double, double> support_interval(const Vector& u) const;
  /// Axis-aligned bounding box as (lo, hi).
  std::pair<Vector, Vector> bounding_box() const;

  PolyconvexSet transformed(const Matrix& linear, const Vector& shift) const;
  PolyconvexSet translated(const Vector& shift) const;
  PolyconvexSet scaled(double factor) const;

 private:
  std::vector<ConvexPolytope> pieces_;
  std::size_t max_pieces_;
};

/// One nonempty intersection of a sub-family of pieces, as seen by the
/// inclusion-exclusion walk.
struct IntersectionTerm {
  const kernel::Realized& body;
  std::size_t order;  // number of pieces intersected
  int sign;           // (-1)^(order+1)
};

/// Walks every sub-family of `pieces` whose intersection is nonempty, in
/// depth-first order. `visit` returns false to skip supersets of the current
/// family (valid whenever the visited quantity vanishes on all of them).
/// Throws PieceCountTooLarge when pieces.size() > max_pieces.
void for_each_intersection(const std::vector<ConvexPolytope>& pieces, std::size_t max_pieces,
                           const std::function<bool(const IntersectionTerm&)>& visit);

/// Inclusion-exclusion volume of the union.
double union_volume(const PolyconvexSet& set);

/// Union volume for a bare list of pieces (0 for an empty list).
double union_volume(const std::vector<ConvexPolytope>& pieces,
                    std::size_t max_pieces = kDefaultMaxPieces);

/// Inclusion-exclusion of the surface-area valuation: full-dimensional
/// intersections contribute their surface area, (n-1)-dimensional ones twice
/// their (n-1)-volume, lower-dimensional ones nothing.
double union_surface_area(const PolyconvexSet& set);

/// A maximal planar region of the union's boundary on one hyperplane, with
/// the outward normal of that side.
struct BoundaryPatch {
  Vector normal;
  double offset = 0.0;
  double area = 0.0;
};

/// Boundary of the union assembled from piece facets. For every hyperplane
/// carrying a piece facet, the sections of pieces lying on each side are
/// collected and the area covered from one side only is kept. Requires
/// dim >= 2.
std::vector<BoundaryPatch> boundary_patches(const PolyconvexSet& set);

/// Sum of boundary patch areas; an independent route to union_surface_area.
double boundary_area(const PolyconvexSet& set);

}  // namespace gtomo
