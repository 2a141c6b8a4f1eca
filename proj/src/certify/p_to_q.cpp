#include <cmath>
#include <stdexcept>
#include <string>

#include "common.hpp"

namespace m2q {

double gamma_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("gamma_p: p must be >= 1");
  return p <= 2.0 ? 1.0 / p - 0.5 : 0.5 - 1.0 / p;
}

PToQReport p_to_q_from_proxy(const ProxyCertificate& proxy, double p) {
  const auto& rep = proxy.report;
  if (!(p >= 1.0) || p > static_cast<double>(rep.q)) {
    throw std::invalid_argument("p_to_q: need 1 <= p <= q");
  }
  PToQReport out;
  out.p = p;
  out.q = rep.q;
  out.n = rep.n;
  out.d = rep.d;
  out.gamma_p = gamma_p(p);
  out.factor = std::pow(static_cast<double>(rep.d),
                        out.gamma_p + 0.25 - 0.5 / static_cast<double>(rep.q));
  // ||X v||_q = n^{1/q} ||X v||_q̄.
  const double to_standard = std::pow(static_cast<double>(rep.n), 1.0 / rep.q);
  double best = -1.0;
  for (const auto& entry : proxy.list.entries) {
    const double pn = lp_norm(entry.direction.coords(), p);
    const double ratio = to_standard * entry.value / pn;
    if (ratio > best) {
      best = ratio;
      out.best_direction = UnitVector::normalized(entry.direction.coords(), p);
      out.best_provenance = entry.provenance;
    }
  }
  out.lower = best;
  out.certified_upper = out.factor * out.lower;
  out.proxy = rep;
  return out;
}

PToQReport p_to_q_certificate(const DataMatrix& x, double p, int q, const CertifyConfig& cfg) {
  require_even_q(q);
  if (!(p >= 1.0) || p > static_cast<double>(q)) {
    throw std::invalid_argument("p_to_q: need 1 <= p <= q (got p = " + std::to_string(p) + ")");
  }
  return p_to_q_from_proxy(proxy_certificate(x, q, cfg), p);
}

}  // namespace m2q
