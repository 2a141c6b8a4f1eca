#include "m2q/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "m2q/random.hpp"

namespace m2q {
namespace {

void check_symmetric(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument("top_eigenpair_psd: matrix must be square and non-empty");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("top_eigenpair_psd: non-finite entry");
  }
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale) {
    throw std::invalid_argument("top_eigenpair_psd: matrix is not symmetric");
  }
}

}  // namespace

SpectralWitness top_eigenpair_psd(const Eigen::Ref<const Matrix>& m,
                                  const SpectralOptions& opts) {
  check_symmetric(m);
  if (opts.max_iter < 1 || !(opts.tol > 0.0)) {
    throw std::invalid_argument("top_eigenpair_psd: need tol > 0 and max_iter >= 1");
  }
  const Index d = m.rows();
  const UnitVector start = random_unit_vector(d, opts.seed);

  SpectralWitness out;
  Vector v = start.coords();
  Vector w = m * v;
  double lambda = v.dot(w);
  int iter = 0;
  bool converged = false;
  while (iter < opts.max_iter) {
    const double wn = w.norm();
    if (!(wn > 0.0)) break;  // v is in the kernel; only happens for M = 0 in practice
    v = w / wn;
    w.noalias() = m * v;
    const double next = v.dot(w);
    ++iter;
    const bool small_step = std::abs(next - lambda) <= opts.tol * std::max(1.0, lambda);
    lambda = next;
    if (small_step) {
      converged = true;
      break;
    }
  }
  if (w.norm() == 0.0 && m.isZero(0.0)) {
    out.lambda = 0.0;
    out.vector = start;
    out.iterations = iter;
    out.residual = 0.0;
    out.converged = true;
    return out;
  }
  // Renormalize and report the Rayleigh quotient of exactly the returned vector.
  out.vector = UnitVector::normalized(v);
  const Vector mv = m * out.vector.coords();
  out.lambda = std::max(0.0, out.vector.coords().dot(mv));
  out.residual = (mv - out.lambda * out.vector.coords()).norm();
  out.iterations = iter;
  out.converged = converged;
  return out;
}

SingularPair top_singular_pair(const DataMatrix& x, const SpectralOptions& opts) {
  const auto& e = x.entries();
  Matrix xtx = Matrix::Zero(e.cols(), e.cols());
  xtx.selfadjointView<Eigen::Lower>().rankUpdate(e.transpose());
  xtx.triangularView<Eigen::StrictlyUpper>() = xtx.transpose();

  const SpectralWitness w = top_eigenpair_psd(xtx, opts);
  SingularPair out;
  out.right = w.vector;
  out.iterations = w.iterations;
  out.residual = w.residual;
  out.converged = w.converged;
  const Vector image = e * w.vector.coords();
  out.sigma = image.norm();
  if (out.sigma > 0.0) out.left = image / out.sigma;
  return out;
}

}  // namespace m2q
