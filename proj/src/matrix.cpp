#include "m2q/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "m2q/errors.hpp"

namespace m2q {

DataMatrix::DataMatrix(RowMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw std::invalid_argument("DataMatrix: need n >= 1 and d >= 1");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("DataMatrix: entries must be finite");
  }
}

DataMatrix DataMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("DataMatrix: need n >= 1 and d >= 1");
  }
  const auto d = static_cast<Index>(rows.front().size());
  RowMatrix m(static_cast<Index>(rows.size()), d);
  for (Index i = 0; i < m.rows(); ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    if (static_cast<Index>(r.size()) != d) {
      throw std::invalid_argument("DataMatrix: ragged row " +
                                  std::to_string(i));
    }
    for (Index j = 0; j < d; ++j) m(i, j) = r[static_cast<std::size_t>(j)];
  }
  return DataMatrix(std::move(m));
}

DataMatrix DataMatrix::identity(Index d) {
  return DataMatrix(RowMatrix::Identity(d, d));
}

bool DataMatrix::is_zero() const noexcept { return entries_.isZero(0.0); }

double DataMatrix::max_row_norm() const {
  return entries_.rowwise().norm().maxCoeff();
}

double lp_norm(const Eigen::Ref<const Vector>& v, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (p == 2.0) return v.norm();
  if (p == 1.0) return v.lpNorm<1>();
  // Factor out the max entry so large p does not overflow.
  const double m = v.lpNorm<Eigen::Infinity>();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / m, p);
  return m * std::pow(acc, 1.0 / p);
}

UnitVector UnitVector::normalized(const Vector& v, double p) {
  const double norm = lp_norm(v, p);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("UnitVector: cannot normalize zero vector");
  }
  return UnitVector(v / norm, p, false);
}

UnitVector UnitVector::checked(Vector v, double p) {
  const double norm = lp_norm(v, p);
  if (std::abs(norm - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("UnitVector: norm " + std::to_string(norm) +
                                " is not 1");
  }
  return UnitVector(std::move(v), p, false);
}

UnitVector UnitVector::raw(Vector v) { return UnitVector(std::move(v), 2.0, true); }

UnitVector UnitVector::basis(Index d, Index r) {
  return UnitVector(Vector::Unit(d, r), 2.0, false);
}

double expectation_q_moment(const Eigen::Ref<const Vector>& x, int q) {
  if (q < 1) throw std::invalid_argument("expectation norm: q must be >= 1");
  if (x.size() == 0) throw std::invalid_argument("expectation norm: empty vector");
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) acc += ipow(std::abs(x[i]), q);
  return acc / static_cast<double>(x.size());
}

double expectation_q_norm(const Eigen::Ref<const Vector>& x, int q) {
  if (q < 1) throw std::invalid_argument("expectation norm: q must be >= 1");
  if (x.size() == 0) throw std::invalid_argument("expectation norm: empty vector");
  // Scale by the max entry so x^q neither overflows nor underflows.
  const double m = x.lpNorm<Eigen::Infinity>();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < x.size(); ++i) acc += ipow(std::abs(x[i]) / m, q);
  return m * std::pow(acc / static_cast<double>(x.size()), 1.0 / q);
}

double expectation_norm_of_image(const DataMatrix& x,
                                 const Eigen::Ref<const Vector>& v, int q) {
  if (v.size() != x.cols()) {
    throw std::invalid_argument("direction length does not match d");
  }
  const Vector image = x.entries() * v;
  return expectation_q_norm(image, q);
}

GramMatrix gram(const DataMatrix& x) {
  const auto& e = x.entries();
  const Index n = e.rows();
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v = e.row(i).dot(e.row(j));
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return GramMatrix(std::move(g));
}

NormalizedRows normalize_rows(const DataMatrix& x) {
  NormalizedRows out;
  for (Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm > 0.0) {
      out.rows.emplace_back(i, UnitVector::normalized(x.row(i).transpose()));
    } else {
      out.zero_rows.push_back(i);
    }
  }
  return out;
}

Prescaled prescale(const DataMatrix& x) {
  const double s = x.max_row_norm();
  if (!(s > 0.0)) {
    throw DegenerateInputError("prescale: all-zero matrix");
  }
  return Prescaled{DataMatrix(x.entries() / s), s};
}

CanonicalRows canonicalize_rows(const DataMatrix& x) {
  const auto& e = x.entries();
  std::vector<Index> order(static_cast<std::size_t>(e.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    for (Index j = 0; j < e.cols(); ++j) {
      if (e(a, j) < e(b, j)) return true;
      if (e(b, j) < e(a, j)) return false;
    }
    return false;
  });
  RowMatrix sorted(e.rows(), e.cols());
  for (Index k = 0; k < e.rows(); ++k) {
    sorted.row(k) = e.row(order[static_cast<std::size_t>(k)]);
  }
  return CanonicalRows{DataMatrix(std::move(sorted)), std::move(order)};
}

}  // namespace m2q
