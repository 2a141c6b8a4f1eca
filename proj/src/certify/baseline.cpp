#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "common.hpp"
#include "m2q/errors.hpp"
#include "m2q/random.hpp"

namespace m2q {
namespace {

// Largest matrix (entries) the baseline will form, ~1.2 GB of doubles.
constexpr double kMaxDenseEntries = 1.5e8;
// Sides up to this size use a dense eigensolver instead of power iteration.
constexpr Index kDenseSide = 1024;

// d^k, or +inf when it does not fit comfortably in an Index.
double int_power_dim(Index d, int k) {
  double r = 1.0;
  for (int t = 0; t < k; ++t) {
    r *= static_cast<double>(d);
    if (r > 1e15) return std::numeric_limits<double>::infinity();
  }
  return r;
}

// x^{⊗k} as a flat vector of length d^k (last factor varies fastest).
Vector tensor_power(const Eigen::Ref<const Vector>& x, int k) {
  Vector acc = Vector::Ones(1);
  for (int t = 0; t < k; ++t) {
    Vector next(acc.size() * x.size());
    for (Index a = 0; a < acc.size(); ++a) next.segment(a * x.size(), x.size()) = acc[a] * x;
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

CertificateReport baseline_certificate(const DataMatrix& x, int q, const CertifyConfig& cfg) {
  require_even_q(q);
  detail::Stopwatch clock;
  const auto ws = detail::make_workspace(x);
  const RowMatrix& y = ws.y;
  const Index n = y.rows();
  const Index d = y.cols();
  const int half = q / 2;

  CertificateReport rep;
  rep.method = Method::baseline;
  rep.q = q;
  rep.n = n;
  rep.d = d;
  rep.factor = std::pow(static_cast<double>(d), 0.25);
  rep.seed = cfg.spectral.seed;
  rep.tolerances = cfg.spectral;

  // The n x n matrix [G_ij^{q/2}]/n and the flattening share their nonzero
  // spectrum; diagonalize whichever is smaller.
  const double flat_dim = int_power_dim(d, half);
  const bool use_gram = static_cast<double>(n) <= flat_dim;
  const double side = use_gram ? static_cast<double>(n) : flat_dim;
  if (side * side > kMaxDenseEntries) {
    throw CapacityError("baseline: both the Gram side (" + std::to_string(n) +
                        ") and the flattening side are too large");
  }

  Matrix k;
  if (use_gram) {
    k = Matrix::Zero(n, n);
    k.selfadjointView<Eigen::Lower>().rankUpdate(y);
    for (Index j = 0; j < n; ++j) {
      for (Index i = j; i < n; ++i) {
        const double v = ipow(k(i, j), half) / static_cast<double>(n);
        k(i, j) = v;
        k(j, i) = v;
      }
    }
    rep.diagnostics.route = "gram";
  } else {
    const auto dim = static_cast<Index>(flat_dim);
    RowMatrix t(n, dim);
    for (Index i = 0; i < n; ++i) t.row(i) = tensor_power(y.row(i).transpose(), half).transpose();
    k = Matrix::Zero(dim, dim);
    k.selfadjointView<Eigen::Lower>().rankUpdate(t.transpose(), 1.0 / static_cast<double>(n));
    k.triangularView<Eigen::StrictlyUpper>() = k.transpose();
    rep.diagnostics.route = "flattening";
  }
  rep.diagnostics.wall_ms.gram_ms = clock.lap_ms();

  // Power iteration's |Δλ| stop rule undershoots by ~tol/(1 − (λ2/λ1)²) when
  // the top gap is small (e.g. sample covariances at q = 2); small sides are
  // cheap enough to diagonalize exactly.
  double lambda = 0.0;
  if (k.rows() <= kDenseSide) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(k);
    if (solver.info() != Eigen::Success) throw std::runtime_error("baseline: eigensolver failed");
    const Index top = k.rows() - 1;
    lambda = std::max(0.0, solver.eigenvalues()[top]);
    const Vector v = solver.eigenvectors().col(top);
    const double res = (k * v - lambda * v).norm();
    rep.diagnostics.max_eig_residual = lambda > 0.0 ? res / lambda : 0.0;
    rep.diagnostics.max_eig_iterations = 0;
    rep.diagnostics.all_converged = true;
  } else {
    SpectralOptions opts = cfg.spectral;
    opts.seed = derive_seed(cfg.spectral.seed, 0);
    const auto eig = detail::top_eigenpair_relative(k, opts);
    lambda = eig.witness.lambda;
    rep.diagnostics.max_eig_residual = eig.relative_residual;
    rep.diagnostics.max_eig_iterations = eig.witness.iterations;
    rep.diagnostics.all_converged = eig.witness.converged;
  }
  rep.diagnostics.wall_ms.mtilde_ms = clock.lap_ms();

  rep.certified_upper = ws.scale * std::pow(lambda, 1.0 / q);
  rep.diagnostics.lambda_flattening = lambda * std::pow(ws.scale, q);
  return rep;
}

double flatten_check(const DataMatrix& x, int q, Index max_dim) {
  require_even_q(q);
  const double flat_dim = int_power_dim(x.cols(), q / 2);
  if (flat_dim > static_cast<double>(max_dim)) {
    throw CapacityError("flatten_check: d^{q/2} = " + std::to_string(flat_dim) +
                        " exceeds the cap " + std::to_string(max_dim));
  }
  const auto dim = static_cast<Index>(flat_dim);
  Matrix f = Matrix::Zero(dim, dim);
  for (Index i = 0; i < x.rows(); ++i) {
    const Vector t = tensor_power(x.row(i).transpose(), q / 2);
    f.noalias() += t * t.transpose();
  }
  f /= static_cast<double>(x.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(f, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("flatten_check: eigensolver failed");
  }
  return solver.eigenvalues().maxCoeff();
}

}  // namespace m2q
