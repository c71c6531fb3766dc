#include "gtomo/brascamp_lieb.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gtomo/error.hpp"

namespace gtomo {

namespace {

constexpr double kRankTol = 1e-9;

// Orthonormal basis of the column span of m.
Matrix span_basis(const Matrix& m) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  int rank = 0;
  const double cut = kRankTol * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cut) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

Matrix complement_basis(const Matrix& b) {
  const auto n = b.rows();
  const Matrix span = span_basis(b);
  if (span.cols() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(span, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(n - span.cols());
}

int matrix_rank(const Matrix& m) { return static_cast<int>(span_basis(m).cols()); }

Matrix random_subspace(int n, int k, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(n, k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) g(i, j) = normal(rng);
  }
  return span_basis(g);
}

// True when dim V <= sum c_j dim(P_{E_j} V).
bool dimension_condition(const BLDatum& d, const Matrix& v) {
  double rhs = 0.0;
  for (const auto& s : d.subspaces()) rhs += s.weight * matrix_rank(s.basis.transpose() * v);
  return static_cast<double>(v.cols()) <= rhs + 1e-10;
}

}  // namespace

BLDatum::BLDatum(int dim, std::vector<BLSubspace> subspaces, double tol)
    : dim_(dim), subspaces_(std::move(subspaces)) {
  if (dim < 1) throw Error(ErrorCode::DimensionError, "datum dimension must be positive");
  if (subspaces_.empty()) throw Error(ErrorCode::InvariantViolation, "datum needs a subspace");
  for (std::size_t j = 0; j < subspaces_.size(); ++j) {
    const auto& s = subspaces_[j];
    if (s.basis.rows() != dim || s.basis.cols() < 1 || s.basis.cols() > dim) {
      throw Error(ErrorCode::DimensionError,
                  "subspace " + std::to_string(j) + " has a basis of the wrong shape");
    }
    const Matrix gram = s.basis.transpose() * s.basis;
    if (!s.basis.allFinite() ||
        (gram - Matrix::Identity(gram.rows(), gram.cols())).lpNorm<Eigen::Infinity>() > tol) {
      throw Error(ErrorCode::InvariantViolation,
                  "subspace " + std::to_string(j) + " basis is not orthonormal");
    }
    if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
      throw Error(ErrorCode::InvariantViolation,
                  "subspace " + std::to_string(j) + " weight must be positive");
    }
  }
}

BLDatum BLDatum::axes(int n, double c) {
  std::vector<BLSubspace> subs;
  for (int i = 0; i < n; ++i) subs.push_back({unit_axis(n, i), c});
  return BLDatum(n, std::move(subs));
}

BLDatum BLDatum::lines(const std::vector<Vector>& directions, const std::vector<double>& weights) {
  if (directions.empty() || directions.size() != weights.size()) {
    throw Error(ErrorCode::InvariantViolation, "one weight per direction is required");
  }
  std::vector<BLSubspace> subs;
  for (std::size_t j = 0; j < directions.size(); ++j) subs.push_back({directions[j], weights[j]});
  return BLDatum(static_cast<int>(directions.front().size()), std::move(subs));
}

BLDatum BLDatum::coordinate_hyperplanes(int n, double c) {
  if (n < 2) throw Error(ErrorCode::DimensionError, "hyperplane datum needs n >= 2");
  std::vector<BLSubspace> subs;
  for (int i = 0; i < n; ++i) {
    Matrix b = Matrix::Zero(n, n - 1);
    for (int k = 0, col = 0; k < n; ++k) {
      if (k != i) b(k, col++) = 1.0;
    }
    subs.push_back({b, c});
  }
  return BLDatum(n, std::move(subs));
}

BLDatum BLDatum::coordinate_hyperplanes(int n) { return coordinate_hyperplanes(n, 1.0 / (n - 1)); }

double BLDatum::weight_sum() const {
  double c = 0.0;
  for (const auto& s : subspaces_) c += s.weight;
  return c;
}

double BLDatum::scaling_sum() const {
  double c = 0.0;
  for (const auto& s : subspaces_) c += s.weight * static_cast<double>(s.basis.cols());
  return c;
}

std::string_view to_string(FinitenessStatus status) noexcept {
  switch (status) {
    case FinitenessStatus::Certified: return "certified";
    case FinitenessStatus::PlausiblyFinite: return "plausibly_finite";
    case FinitenessStatus::Infinite: return "infinite";
  }
  return "unknown";
}

bool john_condition(const BLDatum& datum, double tol) {
  const int n = datum.dim();
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& s : datum.subspaces()) sum += s.weight * s.basis * s.basis.transpose();
  return (sum - Matrix::Identity(n, n)).lpNorm<Eigen::Infinity>() <= tol;
}

DatumValidation validate_datum(const BLDatum& datum, std::uint64_t seed, int probes) {
  DatumValidation out;
  const int n = datum.dim();
  out.scaling_sum = datum.scaling_sum();
  if (std::abs(out.scaling_sum - n) > 1e-10) {
    std::ostringstream msg;
    msg << "scaling sum " << out.scaling_sum << " differs from dimension " << n;
    out.reason = msg.str();
    return out;
  }

  std::vector<Matrix> structured;
  const auto& subs = datum.subspaces();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    structured.push_back(subs[i].basis);
    structured.push_back(complement_basis(subs[i].basis));
    for (std::size_t j = i + 1; j < subs.size(); ++j) {
      Matrix both(n, subs[i].basis.cols() + subs[j].basis.cols());
      both << subs[i].basis, subs[j].basis;
      structured.push_back(span_basis(both));
      const Matrix ci = complement_basis(subs[i].basis), cj = complement_basis(subs[j].basis);
      Matrix perps(n, ci.cols() + cj.cols());
      perps << ci, cj;
      structured.push_back(complement_basis(perps));
    }
  }
  for (const auto& v : structured) {
    if (v.cols() == 0 || v.cols() == n) continue;
    if (!dimension_condition(datum, v)) {
      out.reason = "dimension condition fails on a subspace of dimension " + std::to_string(v.cols()) +
                   " built from the datum";
      return out;
    }
  }

  std::mt19937_64 rng(seed);
  for (int k = 1; k < n; ++k) {
    for (int p = 0; p < probes; ++p) {
      if (!dimension_condition(datum, random_subspace(n, k, rng))) {
        out.reason = "dimension condition fails on a random subspace of dimension " + std::to_string(k);
        return out;
      }
    }
  }

  out.john = john_condition(datum);
  out.status = out.john ? FinitenessStatus::Certified : FinitenessStatus::PlausiblyFinite;
  return out;
}

double mg_objective(const BLDatum& datum, const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const auto log_det = [](const Eigen::LLT<Matrix>& f) {
    return 2.0 * f.matrixLLT().diagonal().array().log().sum();
  };
  double value = log_det(llt);
  for (const auto& s : datum.subspaces()) {
    Eigen::LLT<Matrix> part(s.basis.transpose() * a * s.basis);
    if (part.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
    value -= s.weight * log_det(part);
  }
  return 0.5 * value;
}

namespace {

Matrix objective_gradient(const BLDatum& datum, const Matrix& a) {
  const int n = datum.dim();
  Matrix g = a.llt().solve(Matrix::Identity(n, n));
  for (const auto& s : datum.subspaces()) {
    const Matrix m = s.basis.transpose() * a * s.basis;
    g -= s.weight * s.basis * m.llt().solve(s.basis.transpose());
  }
  return 0.5 * g;
}

void normalize_trace(Matrix& l) {
  const double tr = l.squaredNorm();  // trace(L L^T)
  l *= std::sqrt(static_cast<double>(l.rows()) / tr);
}

struct Ascent {
  double value;
  Matrix a;
  int iterations;
  double last_improvement;
};

Ascent ascend(const BLDatum& datum, Matrix l, const MgOptions& opt) {
  normalize_trace(l);
  double f = mg_objective(datum, l * l.transpose());
  double eta = 0.1;
  double last = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < opt.iterations; ++it) {
    const Matrix a = l * l.transpose();
    // Riemannian direction: whitened gradient S = L^T G L mapped back as L S.
    // Plain 2 G L stalls on badly conditioned data.
    const Matrix s = l.transpose() * objective_gradient(datum, a) * l;
    const Matrix grad = l * s;
    const double g2 = 2.0 * s.squaredNorm();  // slope along grad
    if (g2 < 1e-26) {
      last = 0.0;
      break;
    }
    double step = eta;
    bool accepted = false;
    Matrix next;
    double fn = f;
    for (int bt = 0; bt < 60; ++bt) {
      next = l + step * grad;
      fn = mg_objective(datum, next * next.transpose());
      if (std::isfinite(fn) && fn >= f + 1e-4 * step * g2) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      last = 0.0;
      break;
    }
    normalize_trace(next);
    fn = mg_objective(datum, next * next.transpose());
    last = fn - f;
    l = next;
    f = fn;
    eta = 2.0 * step;
    if (last <= 1e-15 * (1.0 + std::abs(f))) break;
  }
  return {f, l * l.transpose(), it, last};
}

}  // namespace

MgResult mg_maximize(const BLDatum& datum, const MgOptions& options) {
  const int n = datum.dim();
  const auto check = validate_datum(datum, options.seed);
  if (check.status == FinitenessStatus::Infinite) {
    throw Error(ErrorCode::InvariantViolation, "datum is not finite: " + check.reason);
  }
  MgResult out;
  if (options.john_shortcut && check.john) {
    out.value = 0.0;
    out.argmax = Matrix::Identity(n, n);
    out.shortcut = true;
    return out;
  }

  std::vector<Matrix> starts{Matrix::Identity(n, n)};
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  while (static_cast<int>(starts.size()) < options.random_starts + 1) {
    Matrix l(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) l(i, j) = normal(rng);
    }
    if (std::abs(l.determinant()) > 1e-3) starts.push_back(l);
  }

  out.value = -std::numeric_limits<double>::infinity();
  for (const auto& l0 : starts) {
    const Ascent run = ascend(datum, l0, options);
    out.iterations += run.iterations;
    if (run.iterations >= options.iterations && run.last_improvement > options.stall_tolerance) {
      std::ostringstream msg;
      msg << "objective still improving by " << run.last_improvement << " after "
          << options.iterations << " iterations";
      throw Error(ErrorCode::NonConvergence, msg.str());
    }
    if (run.value > out.value) {
      out.value = run.value;
      out.argmax = run.a;
    }
  }
  return out;
}

double mg_optimize(const BLDatum& datum, const MgOptions& options) {
  return mg_maximize(datum, options).value;
}

}  // namespace gtomo
