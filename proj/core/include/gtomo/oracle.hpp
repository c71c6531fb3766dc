#pragma once

#include <cstddef>
#include <cstdint>

#include "gtomo/polyconvex.hpp"

namespace gtomo {

/// Brute-force estimators that share no code path with the exact
/// computations beyond piece membership and union volume.
struct OracleConfig {
  std::uint64_t seed = 7;
  std::size_t n_samples = 1'000'000;
  double epsilon = 1e-3;      // absolute shift for the perturbation quotient
  int grid_resolution = 512;  // cells per remaining coordinate
  unsigned threads = 0;       // 0 = hardware concurrency

  /// Throws InvariantViolation unless n_samples >= 1e4, epsilon > 0 and
  /// grid_resolution >= 64.
  void validate() const;
};

struct VolumeEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Rejection sampling in the bounding box. Samples are drawn in fixed blocks;
/// block k uses a generator seeded with seed ^ k, so the result does not
/// depend on the thread count.
VolumeEstimate mc_volume(const PolyconvexSet& set, const OracleConfig& cfg);
inline constexpr std::size_t kMonteCarloBlock = 1 << 16;

/// 2 (V(U cup (U + eps u)) - V(U)) / (eps V(U)): the finite-shift L1
/// quotient of the marginal along u, from exact volumes. Throws
/// EpsilonTooLarge when eps exceeds 10% of the support width along u.
double epsilon_tv_quotient(const PolyconvexSet& set, const Vector& u, const OracleConfig& cfg);

/// (2/V) * integral of the chord-interval count over the bounding box of
/// the other coordinates, by the midpoint rule.
double nslice_integral(const PolyconvexSet& set, int axis, const OracleConfig& cfg);

}  // namespace gtomo
