#include "gtomo/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace gtomo::kernel {
namespace {

double feasibility_slack(double offset, double tol) { return tol * (1.0 + std::abs(offset)); }

bool same_point(const Vector& a, const Vector& b, double tol) {
  return (a - b).lpNorm<Eigen::Infinity>() <= tol * (1.0 + a.lpNorm<Eigen::Infinity>());
}

void push_unique(PointList& out, const Vector& p, double tol) {
  for (const auto& q : out) {
    if (same_point(p, q, tol)) return;
  }
  out.push_back(p);
}

// Calls visit(indices) for every k-subset of {0..m-1} in lexicographic order.
template <class Visit>
void for_each_combination(int m, int k, Visit&& visit) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<std::vector<Halfspace>> normalize(int dim, const std::vector<Halfspace>& hs,
                                                double tol) {
  std::vector<Halfspace> out;
  out.reserve(hs.size());
  for (const auto& h : hs) {
    const double norm = h.normal.norm();
    if (norm <= tol) {
      if (h.offset < -tol) return std::nullopt;
      continue;
    }
    Halfspace unit{h.normal / norm, h.offset / norm};
    bool merged = false;
    for (auto& existing : out) {
      if ((existing.normal - unit.normal).lpNorm<Eigen::Infinity>() <= tol) {
        existing.offset = std::min(existing.offset, unit.offset);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(std::move(unit));
  }
  (void)dim;
  return out;
}

PointList enumerate_vertices(int dim, const std::vector<Halfspace>& hs, double tol) {
  PointList vertices;
  const int m = static_cast<int>(hs.size());
  if (m < dim) return vertices;

  Matrix system(dim, dim);
  Vector rhs(dim);
  for_each_combination(m, dim, [&](const std::vector<int>& idx) {
    for (int r = 0; r < dim; ++r) {
      system.row(r) = hs[idx[r]].normal.transpose();
      rhs(r) = hs[idx[r]].offset;
    }
    Eigen::FullPivLU<Matrix> lu(system);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) return;
    const Vector x = lu.solve(rhs);
    for (const auto& h : hs) {
      if (h.normal.dot(x) > h.offset + feasibility_slack(h.offset, tol)) return;
    }
    push_unique(vertices, x, tol);
  });
  return vertices;
}

bool is_bounded(int dim, const std::vector<Halfspace>& hs, double tol) {
  if (static_cast<int>(hs.size()) < dim + 1) return false;
  // Recession cone {A d <= 0} clipped to the unit cube; bounded iff the only
  // vertex is the origin.
  std::vector<Halfspace> cone;
  cone.reserve(hs.size() + 2 * dim);
  for (const auto& h : hs) cone.push_back({h.normal, 0.0});
  for (int i = 0; i < dim; ++i) {
    cone.push_back({unit_axis(dim, i), 1.0});
    cone.push_back({-unit_axis(dim, i), 1.0});
  }
  const auto normalized = normalize(dim, cone, tol);
  if (!normalized) return true;
  for (const auto& v : enumerate_vertices(dim, *normalized, tol)) {
    if (v.lpNorm<Eigen::Infinity>() > 1e-6) return false;
  }
  return true;
}

AffineHull affine_hull(const PointList& points, double tol) {
  AffineHull hull;
  const int n = static_cast<int>(points.front().size());
  hull.base = Vector::Zero(n);
  for (const auto& p : points) hull.base += p;
  hull.base /= static_cast<double>(points.size());
  if (points.size() == 1) {
    hull.basis = Matrix(n, 0);
    return hull;
  }
  Matrix diffs(n, static_cast<Eigen::Index>(points.size()));
  for (std::size_t k = 0; k < points.size(); ++k) diffs.col(static_cast<Eigen::Index>(k)) = points[k] - hull.base;
  Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const double threshold = tol * std::max(1.0, sigma(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  hull.basis = svd.matrixU().leftCols(rank);
  return hull;
}

int affine_dimension(const PointList& points, double tol) {
  if (points.empty()) return -1;
  return affine_hull(points, tol).dim();
}

Matrix orthogonal_complement(const Matrix& basis) {
  const auto n = basis.rows();
  const auto k = basis.cols();
  if (k == 0) return Matrix::Identity(n, n);
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - k);
}

Matrix orthogonal_complement(const Vector& u) {
  Matrix basis = u.normalized();
  return orthogonal_complement(basis);
}

std::vector<Halfspace> hull_halfspaces(const PointList& points, double tol) {
  const int d = static_cast<int>(points.front().size());
  std::vector<Halfspace> out;
  if (d == 1) {
    double lo = points.front()(0), hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p(0));
      hi = std::max(hi, p(0));
    }
    out.push_back({unit_axis(1, 0), hi});
    out.push_back({-unit_axis(1, 0), -lo});
    return out;
  }

  double scale = 1.0;
  for (const auto& p : points) scale = std::max(scale, p.lpNorm<Eigen::Infinity>());
  const double side_tol = tol * scale;

  Matrix diffs(d - 1, d);
  for_each_combination(static_cast<int>(points.size()), d, [&](const std::vector<int>& idx) {
    for (int r = 1; r < d; ++r) diffs.row(r - 1) = (points[idx[r]] - points[idx[0]]).transpose();
    Eigen::JacobiSVD<Matrix> svd(diffs, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    if (sigma(d - 2) <= 1e-10 * std::max(1.0, sigma(0))) return;
    Vector normal = svd.matrixV().col(d - 1);
    double offset = normal.dot(points[idx[0]]);
    bool below = true, above = true;
    for (const auto& p : points) {
      const double s = normal.dot(p) - offset;
      if (s > side_tol) below = false;
      if (s < -side_tol) above = false;
      if (!below && !above) return;
    }
    if (!below) {
      normal = -normal;
      offset = -offset;
    }
    for (const auto& h : out) {
      if ((h.normal - normal).lpNorm<Eigen::Infinity>() <= 1e3 * tol &&
          std::abs(h.offset - offset) <= 1e3 * tol * scale) {
        return;
      }
    }
    out.push_back({normal, offset});
  });
  return out;
}

std::optional<std::vector<Halfspace>> restrict_to_flat(const std::vector<Halfspace>& hs,
                                                       const Vector& base, const Matrix& basis,
                                                       double tol) {
  std::vector<Halfspace> local;
  local.reserve(hs.size());
  for (const auto& h : hs) {
    const Vector a = basis.transpose() * h.normal;
    const double b = h.offset - h.normal.dot(base);
    const double norm = a.norm();
    if (norm <= tol) {
      if (b < -feasibility_slack(h.offset, tol)) return std::nullopt;
      continue;
    }
    local.push_back({a / norm, b / norm});
  }
  return normalize(static_cast<int>(basis.cols()), local, tol);
}

Measure measure(int dim, const std::vector<Halfspace>& hs, const PointList& vertices, double tol) {
  Measure out;
  if (dim == 1) {
    double lo = vertices.front()(0), hi = lo;
    for (const auto& v : vertices) {
      lo = std::min(lo, v(0));
      hi = std::max(hi, v(0));
    }
    out.volume = hi - lo;
    int lower = -1, upper = -1;
    for (std::size_t j = 0; j < hs.size(); ++j) {
      if (hs[j].normal(0) < 0 && std::abs(-hs[j].offset - lo) <= feasibility_slack(lo, tol)) lower = static_cast<int>(j);
      if (hs[j].normal(0) > 0 && std::abs(hs[j].offset - hi) <= feasibility_slack(hi, tol)) upper = static_cast<int>(j);
    }
    out.facets.push_back({-unit_axis(1, 0), -lo, 1.0});
    out.facet_constraint.push_back(lower);
    out.facets.push_back({unit_axis(1, 0), hi, 1.0});
    out.facet_constraint.push_back(upper);
    return out;
  }

  Vector centroid = Vector::Zero(dim);
  for (const auto& v : vertices) centroid += v;
  centroid /= static_cast<double>(vertices.size());

  std::map<std::vector<int>, bool> seen;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    const auto& h = hs[j];
    std::vector<int> tight;
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      if (std::abs(h.normal.dot(vertices[k]) - h.offset) <= feasibility_slack(h.offset, tol)) {
        tight.push_back(static_cast<int>(k));
      }
    }
    if (static_cast<int>(tight.size()) < dim) continue;
    if (!seen.emplace(tight, true).second) continue;

    PointList on_facet;
    on_facet.reserve(tight.size());
    for (int k : tight) on_facet.push_back(vertices[k]);
    if (affine_dimension(on_facet, tol) != dim - 1) continue;

    const Matrix basis = orthogonal_complement(h.normal);
    const Vector base = h.normal * h.offset;
    PointList local_vertices;
    local_vertices.reserve(on_facet.size());
    for (const auto& v : on_facet) local_vertices.push_back(basis.transpose() * (v - base));
    const auto local_hs = restrict_to_flat(hs, base, basis, tol);
    if (!local_hs) continue;

    const double area = measure(dim - 1, *local_hs, local_vertices, tol).volume;
    const double height = h.offset - h.normal.dot(centroid);
    out.volume += height * area / dim;
    out.facets.push_back({h.normal, h.offset, area});
    out.facet_constraint.push_back(static_cast<int>(j));
  }
  return out;
}

Realized realize(int dim, const std::vector<Halfspace>& hs, double tol) {
  Realized out;
  auto normalized = normalize(dim, hs, tol);
  if (!normalized) return out;
  out.vertices = enumerate_vertices(dim, *normalized, tol);
  if (out.vertices.empty()) return out;
  out.affine_dim = affine_dimension(out.vertices, tol);
  if (out.affine_dim == dim) {
    // Constraints touching fewer than dim vertices cannot define facets.
    for (const auto& h : *normalized) {
      int tight = 0;
      for (const auto& v : out.vertices) {
        if (std::abs(h.normal.dot(v) - h.offset) <= feasibility_slack(h.offset, tol)) ++tight;
      }
      if (tight >= dim) out.halfspaces.push_back(h);
    }
  } else {
    out.halfspaces = std::move(*normalized);
  }
  return out;
}

double intrinsic_measure(const PointList& points, double tol) {
  const AffineHull hull = affine_hull(points, tol);
  const int k = hull.dim();
  if (k == 0) return 1.0;
  PointList local;
  local.reserve(points.size());
  for (const auto& p : points) local.push_back(hull.basis.transpose() * (p - hull.base));
  if (k == 1) {
    double lo = local.front()(0), hi = lo;
    for (const auto& p : local) {
      lo = std::min(lo, p(0));
      hi = std::max(hi, p(0));
    }
    return hi - lo;
  }
  return measure(k, hull_halfspaces(local, tol), local, tol).volume;
}

}  // namespace gtomo::kernel
