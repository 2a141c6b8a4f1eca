#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "common.hpp"
#include "m2q/parallel.hpp"
#include "m2q/random.hpp"

namespace m2q {
namespace {

// Full n x n Gram matrices above this row count are not materialized; rows
// are recomputed on demand instead.
constexpr Index kFullGramMaxRows = 4096;

Vector sqrt_mi_weights(const Eigen::Ref<const Vector>& gram_row, int q) {
  // sqrt(G_ij^{q-2}) = |G_ij|^{(q-2)/2}; q - 2 is even so the weight is >= 0.
  Vector h(gram_row.size());
  const int half = (q - 2) / 2;
  for (Index j = 0; j < gram_row.size(); ++j) h[j] = ipow(std::abs(gram_row[j]), half);
  return h;
}

struct RowResult {
  double row_value = 0.0;  // ||Y ybar_k||_q̄ (scaled units)
  UnitVector u;
  double lambda = 0.0;     // ||M_k|| estimate (scaled units)
  double eig_value = 0.0;  // ||Y u_k||_q̄ (scaled units)
  double relative_residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

}  // namespace

double proxy_factor(Index d, int q) {
  return std::pow(static_cast<double>(d), 0.25 - 0.5 / static_cast<double>(q));
}

Matrix build_mi(const DataMatrix& x, Index i, int q, const GramMatrix& g) {
  require_even_q(q);
  if (i < 0 || i >= x.rows()) throw std::invalid_argument("build_mi: row index out of range");
  if (g.size() != x.rows()) throw std::invalid_argument("build_mi: Gram size mismatch");
  const Vector row = g.matrix().row(i).transpose();
  return detail::weighted_second_moment(x.entries(), sqrt_mi_weights(row, q));
}

double frobenius_mv(const DataMatrix& x, const Eigen::Ref<const Vector>& v, int q,
                    const GramMatrix& g) {
  require_even_q(q);
  if (v.size() != x.cols()) throw std::invalid_argument("frobenius_mv: length mismatch");
  if (g.size() != x.rows()) throw std::invalid_argument("frobenius_mv: Gram size mismatch");
  const Vector a = (x.entries() * v).array().square().matrix();
  const Index n = x.rows();
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    double row = 0.0;
    for (Index j = 0; j < n; ++j) row += a[j] * ipow(g(i, j), q - 2);
    acc += a[i] * row;
  }
  acc /= static_cast<double>(n) * static_cast<double>(n);
  return std::sqrt(std::max(0.0, acc));
}

ProxyCertificate proxy_certificate(const DataMatrix& x, int q, const CertifyConfig& cfg) {
  require_even_q(q);
  detail::Stopwatch clock;
  const auto ws = detail::make_workspace(x);
  const RowMatrix& y = ws.y;
  const Index n = y.rows();
  const Index d = y.cols();
  const double s = ws.scale;

  ProxyCertificate out;
  CertificateReport& rep = out.report;
  rep.method = Method::proxy;
  rep.q = q;
  rep.n = n;
  rep.d = d;
  rep.factor = proxy_factor(d, q);
  rep.seed = cfg.spectral.seed;
  rep.tolerances = cfg.spectral;

  const Vector norms = y.rowwise().norm();
  std::vector<Index> nonzero;  // canonical positions
  for (Index k = 0; k < n; ++k) {
    if (norms[k] > 0.0) nonzero.push_back(k);
  }

  Matrix full_gram;
  const bool use_full_gram = n <= kFullGramMaxRows;
  if (use_full_gram) {
    full_gram = Matrix::Zero(n, n);
    full_gram.selfadjointView<Eigen::Lower>().rankUpdate(y);
    full_gram.triangularView<Eigen::StrictlyUpper>() = full_gram.transpose();
  }
  rep.diagnostics.wall_ms.gram_ms = clock.lap_ms();

  // Per-row work: Gram row, row value, M_k, u_k and its value.
  std::vector<RowResult> results(nonzero.size());
  parallel_for(
      nonzero.size(),
      [&](std::size_t t) {
        const Index k = nonzero[t];
        const Vector g = use_full_gram ? Vector(full_gram.col(k))
                                       : Vector(y * y.row(k).transpose());
        RowResult& r = results[t];
        r.row_value = expectation_q_norm(g, q) / norms[k];
        const Matrix mk = detail::weighted_second_moment(y, sqrt_mi_weights(g, q));
        SpectralOptions opts = cfg.spectral;
        opts.seed = derive_seed(cfg.spectral.seed, static_cast<std::uint64_t>(k) + 1);
        auto eig = detail::top_eigenpair_relative(mk, opts);
        r.lambda = eig.witness.lambda;
        r.relative_residual = eig.relative_residual;
        r.iterations = eig.witness.iterations;
        r.converged = eig.witness.converged;
        r.u = std::move(eig.witness.vector);
        r.eig_value = expectation_q_norm(y * r.u.coords(), q);
      },
      cfg.threads);
  rep.diagnostics.wall_ms.mi_loop_ms = clock.lap_ms();

  // M~ = E_k ||M_k|| y_k y_k^T, accumulated in one fixed-order rank update.
  Vector sqrt_lambda = Vector::Zero(n);
  for (std::size_t t = 0; t < nonzero.size(); ++t) {
    sqrt_lambda[nonzero[t]] = std::sqrt(results[t].lambda);
  }
  const Matrix mtilde = detail::weighted_second_moment(y, sqrt_lambda);
  SpectralOptions mt_opts = cfg.spectral;
  mt_opts.seed = derive_seed(cfg.spectral.seed, 0);
  const auto mt_eig = detail::top_eigenpair_relative(mtilde, mt_opts);
  rep.diagnostics.wall_ms.mtilde_ms = clock.lap_ms();

  // Assemble L: basis, rows, eigMi, eigMtilde (rows in original order).
  ProxyList& list = out.list;
  list.entries.reserve(static_cast<std::size_t>(d) + 2 * nonzero.size() + 1);
  for (Index r = 0; r < d; ++r) {
    list.entries.push_back({UnitVector::basis(d, r), {ProvenanceKind::basis, r},
                            s * expectation_q_norm(y.col(r), q)});
  }
  std::vector<Index> result_slot(static_cast<std::size_t>(n), -1);
  for (std::size_t t = 0; t < nonzero.size(); ++t) {
    result_slot[static_cast<std::size_t>(nonzero[t])] = static_cast<Index>(t);
  }
  auto for_each_nonzero_original = [&](auto&& fn) {
    for (Index i = 0; i < n; ++i) {
      const Index k = ws.canonical_position[static_cast<std::size_t>(i)];
      const Index slot = result_slot[static_cast<std::size_t>(k)];
      if (slot >= 0) fn(i, k, results[static_cast<std::size_t>(slot)]);
    }
  };
  for_each_nonzero_original([&](Index i, Index k, const RowResult& r) {
    list.entries.push_back({UnitVector::normalized(y.row(k).transpose()),
                            {ProvenanceKind::row, i}, s * r.row_value});
  });
  for_each_nonzero_original([&](Index i, Index, const RowResult& r) {
    list.entries.push_back({r.u, {ProvenanceKind::eig_mi, i}, s * r.eig_value});
  });
  list.entries.push_back({mt_eig.witness.vector, {ProvenanceKind::eig_mtilde, 0},
                          s * expectation_q_norm(y * mt_eig.witness.vector.coords(), q)});
  list.basis_count = d;
  list.row_count = static_cast<Index>(nonzero.size());
  list.eig_mi_count = static_cast<Index>(nonzero.size());
  list.eig_mtilde_count = 1;

  std::size_t best = 0;
  for (std::size_t e = 1; e < list.entries.size(); ++e) {
    if (list.entries[e].value > list.entries[best].value) best = e;
  }
  rep.list_max = list.entries[best].value;
  rep.certified_upper = rep.factor * *rep.list_max;
  rep.best_direction = list.entries[best].direction;
  rep.best_provenance = list.entries[best].provenance;
  rep.diagnostics.wall_ms.list_eval_ms = clock.lap_ms();

  // Diagnostics and internals in original units.
  const double s_mi = std::pow(s, 2 * q - 2);
  const double s_mt = std::pow(s, 2 * q);
  out.mi_norms.assign(static_cast<std::size_t>(n), 0.0);
  for_each_nonzero_original([&](Index i, Index, const RowResult& r) {
    out.mi_norms[static_cast<std::size_t>(i)] = r.lambda * s_mi;
  });
  out.mtilde = mtilde * s_mt;
  auto& diag = rep.diagnostics;
  diag.lambda_mtilde = mt_eig.witness.lambda * s_mt;
  diag.max_eig_residual = mt_eig.relative_residual;
  diag.max_eig_iterations = mt_eig.witness.iterations;
  diag.all_converged = mt_eig.witness.converged;
  for (const auto& r : results) {
    diag.max_eig_residual = std::max(diag.max_eig_residual, r.relative_residual);
    diag.max_eig_iterations = std::max(diag.max_eig_iterations, r.iterations);
    diag.all_converged = diag.all_converged && r.converged;
  }
  return out;
}

}  // namespace m2q
