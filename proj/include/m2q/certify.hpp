#pragma once

// Certificates for the hypercontractive norm
//
//   ||X||_{2->q̄} = sup_{||v||_2 = 1} (E_i <x_i, v>^q)^{1/q}.
//
// * proxy:    a list L of O(n + d) unit vectors (basis vectors, normalized
//             rows, top eigenvectors u_i of M_i = E_j <x_i,x_j>^{q-2} x_j x_j^T,
//             and the top eigenvector of M~ = E_i ||M_i|| x_i x_i^T). With
//             B = max_{v in L} ||X v||_q̄,
//                 B <= ||X||_{2->q̄} <= d^{1/4 - 1/(2q)} B.
// * baseline: ||E_i x_i^{⊗q/2} (x_i^{⊗q/2})^T||^{1/q}, a d^{1/4} certificate.
// * guth:     normalized rows plus the top right singular vector, with the
//             multiplier n^{(q-2)/(2q(q-1))}. Comparison only.
// * p->q:     the proxy list rescaled to the l_p sphere, factor
//             d^{gamma_p + 1/4 - 1/(2q)}, standard (non-expectation) norms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "m2q/matrix.hpp"
#include "m2q/spectral.hpp"

namespace m2q {

enum class ProvenanceKind { basis, row, eig_mi, eig_mtilde, singular };

/// Where a list direction came from. `index` is the basis coordinate or the
/// original row index; unused for eig_mtilde and singular.
struct Provenance {
  ProvenanceKind kind = ProvenanceKind::basis;
  Index index = 0;

  std::string to_string() const;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ProxyEntry {
  UnitVector direction;
  Provenance provenance;
  /// ||X direction||_q̄ on the original (unscaled) data.
  double value = 0.0;
};

/// Ordered witness list: basis, rows, eigMi, eigMtilde. Rows and eigMi
/// entries follow original row order and skip zero rows. Duplicates are kept.
struct ProxyList {
  std::vector<ProxyEntry> entries;
  Index basis_count = 0;
  Index row_count = 0;
  Index eig_mi_count = 0;
  Index eig_mtilde_count = 0;

  std::size_t size() const noexcept { return entries.size(); }
  std::vector<Vector> directions() const;
};

enum class Method { proxy, baseline, guth };
enum class Decision { no_consistent, yes_witnessed, inconclusive };

std::string to_string(Method m);
std::string to_string(Decision d);

struct PhaseTimes {
  double gram_ms = 0.0;
  double mi_loop_ms = 0.0;
  double mtilde_ms = 0.0;
  double list_eval_ms = 0.0;
};

struct Diagnostics {
  double max_eig_residual = 0.0;
  /// lambda(M~) in original units (proxy only).
  std::optional<double> lambda_mtilde;
  /// Top eigenvalue of the flattening in original units (baseline only).
  std::optional<double> lambda_flattening;
  /// "gram" or "flattening" (baseline only): which side was diagonalized.
  std::optional<std::string> route;
  int max_eig_iterations = 0;
  bool all_converged = true;
  PhaseTimes wall_ms;
};

struct CertificateReport {
  Method method = Method::proxy;
  int q = 4;
  Index n = 0;
  Index d = 0;
  double factor = 1.0;
  /// Largest list value B; empty for the baseline, which has no witness.
  std::optional<double> list_max;
  double certified_upper = 0.0;
  std::optional<UnitVector> best_direction;
  std::optional<Provenance> best_provenance;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<Decision> decision;
  std::uint64_t seed = 0;
  SpectralOptions tolerances;
  Diagnostics diagnostics;
};

struct CertifyConfig {
  SpectralOptions spectral;
  /// Workers for the per-row loop; 0 = thread_count().
  std::size_t threads = 0;
};

/// Everything proxy_certificate computes, in original units.
struct ProxyCertificate {
  ProxyList list;
  CertificateReport report;
  /// ||M_i||_op estimate (Rayleigh quotient of u_i) per original row; 0 for
  /// zero rows.
  std::vector<double> mi_norms;
  /// M~ = E_i ||M_i|| x_i x_i^T.
  Matrix mtilde;
};

/// Throws std::invalid_argument unless q is even and >= 2.
void require_even_q(int q);

/// d^{1/4 - 1/(2q)}.
double proxy_factor(Index d, int q);

/// M_i = (1/n) sum_j G_ij^{q-2} x_j x_j^T, with i a 0-based row index.
Matrix build_mi(const DataMatrix& x, Index i, int q, const GramMatrix& g);

/// sqrt((1/n^2) sum_ij <x_i,v>^2 <x_j,v>^2 G_ij^{q-2}) without forming M_v.
double frobenius_mv(const DataMatrix& x, const Eigen::Ref<const Vector>& v, int q,
                    const GramMatrix& g);

ProxyCertificate proxy_certificate(const DataMatrix& x, int q,
                                   const CertifyConfig& cfg = {});

/// YES-witnessed if B > alpha; otherwise NO-consistent when
/// certified_upper <= beta and inconclusive if not. beta defaults to
/// factor * alpha. Reports without a witness (baseline) are never YES.
/// Throws std::invalid_argument for alpha <= 0 or beta <= 0.
Decision decide(const CertificateReport& report, double alpha,
                std::optional<double> beta = std::nullopt);

/// Same decision, recorded on the report.
void apply_decision(CertificateReport& report, double alpha,
                    std::optional<double> beta = std::nullopt);

CertificateReport baseline_certificate(const DataMatrix& x, int q,
                                       const CertifyConfig& cfg = {});

/// Top eigenvalue of the explicit d^{q/2} x d^{q/2} flattening
/// (1/n) sum_i x_i^{⊗q/2} (x_i^{⊗q/2})^T from a dense symmetric eigensolver.
/// Throws CapacityError if d^{q/2} > max_dim.
double flatten_check(const DataMatrix& x, int q, Index max_dim = 4096);

/// ||X xbar_i||_q̄ for every row (0 for zero rows), original row order.
std::vector<double> normalized_row_values(const DataMatrix& x, int q, std::size_t threads = 0);

/// n^{(q-2)/(2q(q-1))}.
double guth_factor(Index n, int q);

CertificateReport guth_certificate(const DataMatrix& x, int q,
                                   const CertifyConfig& cfg = {});

/// 1/p - 1/2 for p <= 2, 1/2 - 1/p for p >= 2. Throws for p < 1.
double gamma_p(double p);

struct PToQReport {
  double p = 2.0;
  int q = 4;
  Index n = 0;
  Index d = 0;
  double gamma_p = 0.0;
  double factor = 1.0;
  /// Best list direction rescaled to ||.||_p = 1.
  UnitVector best_direction;
  Provenance best_provenance;
  /// max over L of ||X v||_q / ||v||_p (standard norms).
  double lower = 0.0;
  double certified_upper = 0.0;
  CertificateReport proxy;
};

/// Throws std::invalid_argument unless 1 <= p <= q and q is even.
PToQReport p_to_q_certificate(const DataMatrix& x, double p, int q,
                              const CertifyConfig& cfg = {});

/// Builds the list and report from an already computed proxy certificate.
PToQReport p_to_q_from_proxy(const ProxyCertificate& proxy, double p);

}  // namespace m2q
