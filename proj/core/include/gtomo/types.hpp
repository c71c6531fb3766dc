#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gtomo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using PointList = std::vector<Vector>;

/// Geometric tolerance used for vertex deduplication, constraint
/// satisfaction and rank decisions.
struct Tolerance {
  double geom = 1e-9;
};

inline constexpr double kDefaultGeomTolerance = 1e-9;

/// Unit vector e_i in R^dim.
inline Vector unit_axis(int dim, int i) {
  Vector e = Vector::Zero(dim);
  e(i) = 1.0;
  return e;
}

}  // namespace gtomo
