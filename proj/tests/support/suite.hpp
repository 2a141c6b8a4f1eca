#pragma once

// Shared randomized instances and independent reference computations for the
// unit and acceptance tests. Nothing here calls the library's eigen or
// certificate code: references use Eigen's dense solvers and plain loops.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "m2q/generators.hpp"
#include "m2q/matrix.hpp"
#include "m2q/random.hpp"

namespace m2q::testing {

struct Instance {
  std::string label;
  GeneratorKind kind;
  Index n;
  Index d;
  int q;
  std::uint64_t seed;
  DataMatrix x;
};

inline DataMatrix make_kind(GeneratorKind kind, Index n, Index d, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.d = d;
  spec.seed = seed;
  if (kind == GeneratorKind::rank_one) spec.params.scale = 1.5;
  if (kind == GeneratorKind::planted_spike) {
    spec.params.spike_fraction = 0.1;
    spec.params.spike_magnitude = 3.0;
  }
  return generate(spec);
}

/// kinds x d in {2,4,8,16} x n in {8,64,512} x q in {2,4,6}, cycled until
/// `count` instances; replicate r of a cell uses a fresh seed.
inline std::vector<Instance> randomized_suite(int count, std::uint64_t base_seed = 2024) {
  const GeneratorKind kinds[] = {GeneratorKind::gaussian, GeneratorKind::planted_spike,
                                 GeneratorKind::rank_one};
  const Index dims[] = {2, 4, 8, 16};
  const Index ns[] = {8, 64, 512};
  const int qs[] = {2, 4, 6};
  std::vector<Instance> out;
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    const int cell = k % 108;
    const int rep = k / 108;
    const GeneratorKind kind = kinds[cell % 3];
    const Index d = dims[(cell / 3) % 4];
    const Index n = ns[(cell / 12) % 3];
    const int q = qs[cell / 36];
    const std::uint64_t seed = derive_seed(base_seed, static_cast<std::uint64_t>(k));
    std::string label = to_string(kind) + " n=" + std::to_string(n) + " d=" + std::to_string(d) +
                        " q=" + std::to_string(q) + " rep=" + std::to_string(rep);
    out.push_back({std::move(label), kind, n, d, q, seed, make_kind(kind, n, d, seed)});
  }
  return out;
}

/// E_i <x_i, v>^q by a plain loop.
inline double moment_ref(const DataMatrix& x, const Vector& v, int q) {
  double acc = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    double t = 0.0;
    for (Index j = 0; j < x.cols(); ++j) t += x.entries()(i, j) * v[j];
    acc += std::pow(t, q);
  }
  return acc / static_cast<double>(x.rows());
}

inline double norm_ref(const DataMatrix& x, const Vector& v, int q) {
  return std::pow(moment_ref(x, v, q), 1.0 / q);
}

inline double top_eigenvalue_dense(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

/// M_i straight from the definition (1/n) sum_j <x_i,x_j>^{q-2} x_j x_j^T.
inline Matrix mi_ref(const DataMatrix& x, Index i, int q) {
  const Index n = x.rows(), d = x.cols();
  Matrix m = Matrix::Zero(d, d);
  for (Index j = 0; j < n; ++j) {
    const double g = x.row(i).dot(x.row(j));
    const Vector xj = x.row(j).transpose();
    m += std::pow(g, q - 2) * xj * xj.transpose();
  }
  return m / static_cast<double>(n);
}

/// ||X||_{2->2̄} = sigma_max / sqrt(n) via a dense SVD.
inline double two_norm_ref(const DataMatrix& x) {
  Eigen::JacobiSVD<Matrix> svd(Matrix(x.entries()));
  return svd.singularValues()(0) / std::sqrt(static_cast<double>(x.rows()));
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace m2q::testing
