#include "common.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace m2q {

void require_even_q(int q) {
  if (q < 2 || q % 2 != 0) {
    throw std::invalid_argument("q must be an even integer >= 2 (got " +
                                std::to_string(q) + ")");
  }
}

std::string Provenance::to_string() const {
  switch (kind) {
    case ProvenanceKind::basis:
      return "basis(" + std::to_string(index) + ")";
    case ProvenanceKind::row:
      return "row(" + std::to_string(index) + ")";
    case ProvenanceKind::eig_mi:
      return "eigMi(" + std::to_string(index) + ")";
    case ProvenanceKind::eig_mtilde:
      return "eigMtilde";
    case ProvenanceKind::singular:
      return "top_singular";
  }
  return "unknown";
}

std::vector<Vector> ProxyList::directions() const {
  std::vector<Vector> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.direction.coords());
  return out;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::proxy:
      return "proxy";
    case Method::baseline:
      return "baseline";
    case Method::guth:
      return "guth";
  }
  return "unknown";
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::no_consistent:
      return "NO-consistent";
    case Decision::yes_witnessed:
      return "YES-witnessed";
    case Decision::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Decision decide(const CertificateReport& report, double alpha,
                std::optional<double> beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("decide: alpha must be positive");
  const double b = beta.value_or(report.factor * alpha);
  if (!(b > 0.0)) throw std::invalid_argument("decide: beta must be positive");
  if (report.list_max && *report.list_max > alpha) return Decision::yes_witnessed;
  return report.certified_upper <= b ? Decision::no_consistent : Decision::inconclusive;
}

void apply_decision(CertificateReport& report, double alpha, std::optional<double> beta) {
  report.decision = decide(report, alpha, beta);
  report.alpha = alpha;
  report.beta = beta.value_or(report.factor * alpha);
}

namespace detail {

Workspace make_workspace(const DataMatrix& x) {
  auto canon = canonicalize_rows(x);
  Workspace ws;
  ws.zero = x.is_zero();
  ws.scale = ws.zero ? 1.0 : canon.matrix.max_row_norm();
  ws.y = canon.matrix.entries() / ws.scale;
  ws.original_index = std::move(canon.original_index);
  ws.canonical_position.resize(ws.original_index.size());
  for (std::size_t k = 0; k < ws.original_index.size(); ++k) {
    ws.canonical_position[static_cast<std::size_t>(ws.original_index[k])] =
        static_cast<Index>(k);
  }
  return ws;
}

Matrix weighted_second_moment(const RowMatrix& y, const Vector& sqrt_weights) {
  const RowMatrix z = sqrt_weights.asDiagonal() * y;
  Matrix m = Matrix::Zero(y.cols(), y.cols());
  m.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose(),
                                               1.0 / static_cast<double>(y.rows()));
  m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
  return m;
}

ScaledEigen top_eigenpair_relative(const Matrix& m, const SpectralOptions& opts) {
  const double max_diag = m.diagonal().maxCoeff();
  ScaledEigen out;
  if (!(max_diag > 0.0)) {
    out.witness = top_eigenpair_psd(m, opts);
    return out;
  }
  const Matrix scaled = m / max_diag;
  out.witness = top_eigenpair_psd(scaled, opts);
  const Vector& v = out.witness.vector.coords();
  const Vector mv = m * v;
  out.witness.lambda = std::max(0.0, v.dot(mv));
  out.witness.residual = (mv - out.witness.lambda * v).norm();
  out.relative_residual =
      out.witness.lambda > 0.0 ? out.witness.residual / out.witness.lambda : 0.0;
  return out;
}

}  // namespace detail
}  // namespace m2q
