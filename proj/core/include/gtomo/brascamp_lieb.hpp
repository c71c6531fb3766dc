#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gtomo/types.hpp"

namespace gtomo {

/// A subspace E given by an orthonormal basis (n x r) and its weight c > 0.
struct BLSubspace {
  Matrix basis;
  double weight = 0.0;
};

/// Brascamp-Lieb datum of orthogonal projections onto subspaces E_j.
class BLDatum {
 public:
  /// Throws DimensionError for a basis of the wrong shape and
  /// InvariantViolation for a non-orthonormal basis or a weight <= 0.
  BLDatum(int dim, std::vector<BLSubspace> subspaces, double tol = kDefaultGeomTolerance);

  /// E_j = span(e_j), every weight `c`.
  static BLDatum axes(int n, double c = 1.0);
  /// E_j = span(u_j) for unit vectors u_j with the given weights.
  static BLDatum lines(const std::vector<Vector>& directions, const std::vector<double>& weights);
  /// E_j = e_j^perp with weight `c`.
  static BLDatum coordinate_hyperplanes(int n, double c);
  /// E_j = e_j^perp with weight 1/(n-1): the Loomis-Whitney datum.
  static BLDatum coordinate_hyperplanes(int n);

  int dim() const { return dim_; }
  const std::vector<BLSubspace>& subspaces() const { return subspaces_; }
  std::size_t size() const { return subspaces_.size(); }
  int rank(std::size_t j) const { return static_cast<int>(subspaces_[j].basis.cols()); }
  /// C = sum c_j
  double weight_sum() const;
  /// sum c_j r_j
  double scaling_sum() const;

 private:
  int dim_;
  std::vector<BLSubspace> subspaces_;
};

enum class FinitenessStatus { Certified, PlausiblyFinite, Infinite };

std::string_view to_string(FinitenessStatus status) noexcept;

struct DatumValidation {
  FinitenessStatus status = FinitenessStatus::Infinite;
  double scaling_sum = 0.0;
  bool john = false;
  std::string reason;  // which check failed, if any
};

/// Scaling check (|sum c_j r_j - n| <= 1e-10), then the dimension condition
/// dim V <= sum c_j dim(P_{E_j} V) on `probes` random subspaces of each
/// dimension 1..n-1 and on the subspaces built from the E_j themselves
/// (E_j, E_j^perp, pairwise intersections and sums). John data is Certified.
DatumValidation validate_datum(const BLDatum& datum, std::uint64_t seed = 0x5eed, int probes = 200);

/// sum c_j B_j B_j^T == I entrywise within tol.
bool john_condition(const BLDatum& datum, double tol = 1e-10);

/// 1/2 [log det A - sum c_j log det(B_j^T A B_j)]; -infinity unless A is
/// positive definite.
double mg_objective(const BLDatum& datum, const Matrix& a);

struct MgOptions {
  int iterations = 500;
  int random_starts = 8;
  std::uint64_t seed = 0x5eed;
  /// Return 0 for John data without iterating.
  bool john_shortcut = true;
  /// NonConvergence when the last improvement at the cap exceeds this.
  double stall_tolerance = 1e-7;
};

struct MgResult {
  double value = 0.0;
  Matrix argmax;  // maximizing A, normalized to trace n
  bool shortcut = false;
  int iterations = 0;  // total over all starts
};

/// Gaussian-extremal constant M_g by gradient ascent on A = L L^T with
/// Armijo backtracking, from the identity plus `random_starts` seeded starts.
/// Throws InvariantViolation when the datum is not finite by validate_datum,
/// NonConvergence when a start is still improving at the iteration cap.
MgResult mg_maximize(const BLDatum& datum, const MgOptions& options = {});
double mg_optimize(const BLDatum& datum, const MgOptions& options = {});

}  // namespace gtomo
