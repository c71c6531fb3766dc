#include "gtomo/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "gtomo/error.hpp"
#include "gtomo/slicing.hpp"

namespace gtomo {

void OracleConfig::validate() const {
  if (n_samples < 10'000) throw Error(ErrorCode::InvariantViolation, "oracle needs at least 1e4 samples");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvariantViolation, "epsilon must be positive");
  }
  if (grid_resolution < 64) throw Error(ErrorCode::InvariantViolation, "grid resolution must be >= 64");
}

namespace {

unsigned worker_count(const OracleConfig& cfg, std::size_t jobs) {
  unsigned t = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

// Runs body(job) for job in [0, jobs) on a small pool; each job writes only
// its own slot so the results are independent of scheduling.
template <class F>
void parallel_for(std::size_t jobs, unsigned workers, const F& body) {
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) body(j);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

}  // namespace

VolumeEstimate mc_volume(const PolyconvexSet& set, const OracleConfig& cfg) {
  cfg.validate();
  const auto [lo, hi] = set.bounding_box();
  const int n = set.dim();
  const std::size_t blocks = (cfg.n_samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<std::size_t> hits(blocks, 0);

  parallel_for(blocks, worker_count(cfg, blocks), [&](std::size_t k) {
    std::mt19937_64 rng(cfg.seed ^ static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t count = std::min(kMonteCarloBlock, cfg.n_samples - k * kMonteCarloBlock);
    Vector x(n);
    std::size_t h = 0;
    for (std::size_t s = 0; s < count; ++s) {
      for (int i = 0; i < n; ++i) x(i) = lo(i) + (hi(i) - lo(i)) * unit(rng);
      if (set.contains(x)) ++h;
    }
    hits[k] = h;
  });

  std::size_t total_hits = 0;
  for (auto h : hits) total_hits += h;
  const double box = (hi - lo).prod();
  const double p = static_cast<double>(total_hits) / static_cast<double>(cfg.n_samples);
  return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.n_samples))};
}

double epsilon_tv_quotient(const PolyconvexSet& set, const Vector& u, const OracleConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw Error(ErrorCode::InvariantViolation, "epsilon must be positive");
  if (u.size() != set.dim() || std::abs(u.norm() - 1.0) > 1e-8) {
    throw Error(ErrorCode::InvariantViolation, "direction must be a unit vector of matching dimension");
  }
  const auto [a, b] = set.support_interval(u);
  if (cfg.epsilon > 0.1 * (b - a)) {
    throw Error(ErrorCode::EpsilonTooLarge,
                "epsilon " + std::to_string(cfg.epsilon) + " exceeds 10% of the support width " +
                    std::to_string(b - a));
  }
  std::vector<ConvexPolytope> both = set.pieces();
  for (const auto& p : set.pieces()) both.push_back(p.translated(cfg.epsilon * u));
  const double v = union_volume(set);
  const double joined = union_volume(both, std::max(set.max_pieces(), both.size()));
  return 2.0 * (joined - v) / (cfg.epsilon * v);
}

double nslice_integral(const PolyconvexSet& set, int axis, const OracleConfig& cfg) {
  cfg.validate();
  const int n = set.dim();
  if (axis < 0 || axis >= n) throw Error(ErrorCode::DimensionError, "axis out of range");
  if (n < 2) throw Error(ErrorCode::DimensionError, "the slice-count integral needs n >= 2");
  const auto [lo, hi] = set.bounding_box();
  std::vector<int> others;
  for (int k = 0; k < n; ++k) {
    if (k != axis) others.push_back(k);
  }
  const int m = n - 1;
  const std::size_t res = static_cast<std::size_t>(cfg.grid_resolution);
  double cell = 1.0;
  for (int k : others) cell *= (hi(k) - lo(k)) / static_cast<double>(res);

  // One job per value of the first remaining coordinate.
  std::vector<long long> counts(res, 0);
  parallel_for(res, worker_count(cfg, res), [&](std::size_t i0) {
    std::size_t rest = 1;
    for (int d = 1; d < m; ++d) rest *= res;
    Vector base(m);
    long long c = 0;
    for (std::size_t idx = 0; idx < rest; ++idx) {
      std::size_t r = idx;
      base(0) = lo(others[0]) + (hi(others[0]) - lo(others[0])) * (i0 + 0.5) / res;
      for (int d = 1; d < m; ++d) {
        const std::size_t id = r % res;
        r /= res;
        base(d) = lo(others[d]) + (hi(others[d]) - lo(others[d])) * (id + 0.5) / res;
      }
      c += line_interval_count(set, axis, base);
    }
    counts[i0] = c;
  });

  long long total = 0;
  for (auto c : counts) total += c;
  return 2.0 * static_cast<double>(total) * cell / union_volume(set);
}

}  // namespace gtomo
