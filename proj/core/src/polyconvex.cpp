#include "gtomo/polyconvex.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gtomo/error.hpp"

namespace gtomo {

PolyconvexSet::PolyconvexSet(std::vector<ConvexPolytope> pieces, std::size_t max_pieces)
    : pieces_(std::move(pieces)), max_pieces_(max_pieces) {
  if (pieces_.empty()) throw Error(ErrorCode::InvariantViolation, "a union needs at least one piece");
  const int n = pieces_.front().dim();
  for (const auto& p : pieces_) {
    if (p.dim() != n) throw Error(ErrorCode::DimensionError, "pieces disagree on dimension");
  }
}

PolyconvexSet::PolyconvexSet(ConvexPolytope piece)
    : PolyconvexSet(std::vector<ConvexPolytope>{std::move(piece)}) {}

bool PolyconvexSet::contains(const Vector& x, double slack) const {
  return std::any_of(pieces_.begin(), pieces_.end(),
                     [&](const ConvexPolytope& p) { return p.contains(x, slack); });
}

std::pair<double, double> PolyconvexSet::support_interval(const Vector& u) const {
  auto [lo, hi] = pieces_.front().support_interval(u);
  for (const auto& p : pieces_) {
    const auto [a, b] = p.support_interval(u);
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  return {lo, hi};
}

std::pair<Vector, Vector> PolyconvexSet::bounding_box() const {
  const int n = dim();
  Vector lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    std::tie(lo(i), hi(i)) = support_interval(unit_axis(n, i));
  }
  return {lo, hi};
}

PolyconvexSet PolyconvexSet::transformed(const Matrix& linear, const Vector& shift) const {
  std::vector<ConvexPolytope> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(p.transformed(linear, shift));
  return PolyconvexSet(std::move(out), max_pieces_);
}

PolyconvexSet PolyconvexSet::translated(const Vector& shift) const {
  return transformed(Matrix::Identity(dim(), dim()), shift);
}

PolyconvexSet PolyconvexSet::scaled(double factor) const {
  std::vector<ConvexPolytope> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(p.scaled(factor));
  return PolyconvexSet(std::move(out), max_pieces_);
}

namespace {

void walk(const std::vector<ConvexPolytope>& pieces, std::size_t start,
          const kernel::Realized& current, std::size_t order, int dim, double tol,
          const std::function<bool(const IntersectionTerm&)>& visit) {
  for (std::size_t i = start; i < pieces.size(); ++i) {
    std::vector<Halfspace> hs = current.halfspaces;
    hs.insert(hs.end(), pieces[i].halfspaces().begin(), pieces[i].halfspaces().end());
    const kernel::Realized next = kernel::realize(dim, hs, tol);
    if (next.affine_dim < 0) continue;
    const int sign = (order % 2 == 0) ? 1 : -1;  // (-1)^order for order+1 pieces
    if (visit(IntersectionTerm{next, order + 1, sign})) {
      walk(pieces, i + 1, next, order + 1, dim, tol, visit);
    }
  }
}

}  // namespace

void for_each_intersection(const std::vector<ConvexPolytope>& pieces, std::size_t max_pieces,
                           const std::function<bool(const IntersectionTerm&)>& visit) {
  if (pieces.size() > max_pieces) {
    throw Error(ErrorCode::PieceCountTooLarge,
                std::to_string(pieces.size()) + " pieces exceed the inclusion-exclusion cap of " +
                    std::to_string(max_pieces));
  }
  if (pieces.empty()) return;
  const int dim = pieces.front().dim();
  const double tol = pieces.front().tolerance().geom;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    kernel::Realized body{pieces[i].halfspaces(), pieces[i].vertices(), dim};
    if (visit(IntersectionTerm{body, 1, 1})) walk(pieces, i + 1, body, 1, dim, tol, visit);
  }
}

double union_volume(const std::vector<ConvexPolytope>& pieces, std::size_t max_pieces) {
  if (pieces.empty()) return 0.0;
  const int dim = pieces.front().dim();
  const double tol = pieces.front().tolerance().geom;
  double total = 0.0;
  for_each_intersection(pieces, max_pieces, [&](const IntersectionTerm& term) {
    if (term.body.affine_dim < dim) return false;
    total += term.sign * kernel::measure(dim, term.body.halfspaces, term.body.vertices, tol).volume;
    return true;
  });
  return total;
}

double union_volume(const PolyconvexSet& set) { return union_volume(set.pieces(), set.max_pieces()); }

double union_surface_area(const PolyconvexSet& set) {
  const int dim = set.dim();
  const double tol = set.tolerance().geom;
  double total = 0.0;
  for_each_intersection(set.pieces(), set.max_pieces(), [&](const IntersectionTerm& term) {
    if (term.body.affine_dim == dim) {
      const auto m = kernel::measure(dim, term.body.halfspaces, term.body.vertices, tol);
      double area = 0.0;
      for (const auto& f : m.facets) area += f.area;
      total += term.sign * area;
      return true;
    }
    if (term.body.affine_dim == dim - 1) {
      total += term.sign * 2.0 * kernel::intrinsic_measure(term.body.vertices, tol);
      return true;
    }
    return false;
  });
  return total;
}

namespace {

// Flip so that the first non-negligible coordinate is positive.
std::pair<Vector, double> canonical_plane(const Vector& normal, double offset) {
  for (Eigen::Index i = 0; i < normal.size(); ++i) {
    if (std::abs(normal(i)) > 1e-9) {
      if (normal(i) < 0) return {-normal, -offset};
      break;
    }
  }
  return {normal, offset};
}

}  // namespace

std::vector<BoundaryPatch> boundary_patches(const PolyconvexSet& set) {
  const int dim = set.dim();
  if (dim < 2) throw Error(ErrorCode::DimensionError, "boundary patches need dimension >= 2");
  const double tol = set.tolerance().geom;

  std::vector<std::pair<Vector, double>> planes;
  for (const auto& piece : set.pieces()) {
    for (const auto& f : piece.facets()) {
      auto plane = canonical_plane(f.normal, f.offset);
      const bool known = std::any_of(planes.begin(), planes.end(), [&](const auto& q) {
        return (q.first - plane.first).template lpNorm<Eigen::Infinity>() <= 1e3 * tol &&
               std::abs(q.second - plane.second) <= 1e3 * tol * (1.0 + std::abs(plane.second));
      });
      if (!known) planes.push_back(std::move(plane));
    }
  }

  std::vector<BoundaryPatch> patches;
  for (const auto& [normal, offset] : planes) {
    const AffineFlat flat(normal * offset, kernel::orthogonal_complement(normal), set.tolerance());
    const double slack = 1e3 * tol * (1.0 + std::abs(offset));
    std::vector<ConvexPolytope> below, above, either;
    for (const auto& piece : set.pieces()) {
      const auto [lo, hi] = piece.support_interval(normal);
      if (hi < offset - slack || lo > offset + slack) continue;
      auto section = intersect_flat(piece, flat);
      if (!section) continue;
      const bool is_below = hi <= offset + slack;
      const bool is_above = lo >= offset - slack;
      if (!is_above) below.push_back(*section);
      if (!is_below) above.push_back(*section);
      either.push_back(*std::move(section));
    }
    if (either.empty()) continue;
    const double covered = union_volume(either, set.max_pieces());
    const double outward = covered - union_volume(above, set.max_pieces());
    const double inward = covered - union_volume(below, set.max_pieces());
    if (outward > 1e-12) patches.push_back({normal, offset, outward});
    if (inward > 1e-12) patches.push_back({-normal, -offset, inward});
  }
  return patches;
}

double boundary_area(const PolyconvexSet& set) {
  double total = 0.0;
  for (const auto& p : boundary_patches(set)) total += p.area;
  return total;
}

}  // namespace gtomo
