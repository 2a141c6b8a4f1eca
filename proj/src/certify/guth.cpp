#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "m2q/parallel.hpp"

namespace m2q {

double guth_factor(Index n, int q) {
  const double e = static_cast<double>(q - 2) / (2.0 * q * (q - 1));
  return std::pow(static_cast<double>(n), e);
}

namespace detail {

Vector normalized_row_values_scaled(const RowMatrix& y, int q, std::size_t threads) {
  // ||Y ybar_k||_q̄ from Gram column blocks.
  const Index n = y.rows();
  const Vector norms = y.rowwise().norm();
  constexpr Index kBlock = 256;
  const Index blocks = (n + kBlock - 1) / kBlock;
  Vector out = Vector::Zero(n);
  parallel_for(
      static_cast<std::size_t>(blocks),
      [&](std::size_t b) {
        const Index begin = static_cast<Index>(b) * kBlock;
        const Index len = std::min(kBlock, n - begin);
        const Matrix g = y * y.middleRows(begin, len).transpose();
        for (Index c = 0; c < len; ++c) {
          const Index k = begin + c;
          if (norms[k] > 0.0) out[k] = expectation_q_norm(g.col(c), q) / norms[k];
        }
      },
      threads);
  return out;
}

}  // namespace detail

std::vector<double> normalized_row_values(const DataMatrix& x, int q, std::size_t threads) {
  require_even_q(q);
  const auto ws = detail::make_workspace(x);
  const Vector scaled = detail::normalized_row_values_scaled(ws.y, q, threads);
  std::vector<double> out(static_cast<std::size_t>(x.rows()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = ws.scale * scaled[ws.canonical_position[i]];
  }
  return out;
}

CertificateReport guth_certificate(const DataMatrix& x, int q, const CertifyConfig& cfg) {
  require_even_q(q);
  detail::Stopwatch clock;
  const auto ws = detail::make_workspace(x);
  const RowMatrix& y = ws.y;
  const Index n = y.rows();
  const Index d = y.cols();

  CertificateReport rep;
  rep.method = Method::guth;
  rep.q = q;
  rep.n = n;
  rep.d = d;
  rep.factor = guth_factor(n, q);
  rep.seed = cfg.spectral.seed;
  rep.tolerances = cfg.spectral;

  const Vector norms = y.rowwise().norm();
  const Vector row_value = detail::normalized_row_values_scaled(y, q, cfg.threads);
  rep.diagnostics.wall_ms.gram_ms = clock.lap_ms();

  const auto sv = top_singular_pair(DataMatrix(y), cfg.spectral);
  const double sv_value = expectation_q_norm(y * sv.right.coords(), q);
  rep.diagnostics.wall_ms.mtilde_ms = clock.lap_ms();
  rep.diagnostics.max_eig_residual = sv.residual;
  rep.diagnostics.max_eig_iterations = sv.iterations;
  rep.diagnostics.all_converged = sv.converged;

  // List order: rows (original order), then the singular vector.
  double best = -1.0;
  for (Index i = 0; i < n; ++i) {
    const Index k = ws.canonical_position[static_cast<std::size_t>(i)];
    if (norms[k] > 0.0 && row_value[k] > best) {
      best = row_value[k];
      rep.best_direction = UnitVector::normalized(y.row(k).transpose());
      rep.best_provenance = Provenance{ProvenanceKind::row, i};
    }
  }
  if (sv_value > best) {
    best = sv_value;
    rep.best_direction = sv.right;
    rep.best_provenance = Provenance{ProvenanceKind::singular, 0};
  }
  rep.list_max = ws.scale * best;
  rep.certified_upper = rep.factor * *rep.list_max;
  rep.diagnostics.wall_ms.list_eval_ms = clock.lap_ms();
  return rep;
}

}  // namespace m2q
