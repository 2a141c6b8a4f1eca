#pragma once

// Dense matrix foundation: the data matrix, unit vectors, Gram matrices and
// the expectation norms everything else is phrased in.

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace m2q {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n x d real matrix whose rows x_1..x_n are the data vectors.
///
/// Always holds at least one row and one column, and only finite entries.
class DataMatrix {
 public:
  /// Throws std::invalid_argument on an empty shape or a non-finite entry.
  explicit DataMatrix(RowMatrix entries);

  static DataMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static DataMatrix identity(Index d);

  Index rows() const noexcept { return entries_.rows(); }
  Index cols() const noexcept { return entries_.cols(); }
  const RowMatrix& entries() const noexcept { return entries_; }
  auto row(Index i) const { return entries_.row(i); }

  bool is_zero() const noexcept;
  double max_row_norm() const;

  friend bool operator==(const DataMatrix& a, const DataMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() &&
           a.entries_.cols() == b.entries_.cols() &&
           a.entries_ == b.entries_;
  }

 private:
  RowMatrix entries_;
};

/// A vector of norm one in the l_p norm it was normalized in (Euclidean by
/// default). `raw()` builds an unchecked vector for places that need to carry
/// arbitrary coordinates in the same slot.
class UnitVector {
 public:
  static constexpr double kUnitTolerance = 1e-9;

  /// Empty (size 0) placeholder.
  UnitVector() = default;

  /// v / ||v||_p. Throws std::invalid_argument for the zero vector.
  static UnitVector normalized(const Vector& v, double p = 2.0);
  /// Accepts v as-is after checking | ||v||_p - 1 | <= 1e-9.
  static UnitVector checked(Vector v, double p = 2.0);
  static UnitVector raw(Vector v);
  static UnitVector basis(Index d, Index r);

  const Vector& coords() const noexcept { return coords_; }
  Index size() const noexcept { return coords_.size(); }
  double operator[](Index i) const { return coords_[i]; }
  double norm_order() const noexcept { return p_; }
  bool is_raw() const noexcept { return raw_; }

 private:
  UnitVector(Vector v, double p, bool raw)
      : coords_(std::move(v)), p_(p), raw_(raw) {}

  Vector coords_;
  double p_ = 2.0;
  bool raw_ = true;
};

/// Symmetric n x n matrix of row inner products G_ij = <x_i, x_j>.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix g) : g_(std::move(g)) {}
  const Matrix& matrix() const noexcept { return g_; }
  double operator()(Index i, Index j) const { return g_(i, j); }
  Index size() const noexcept { return g_.rows(); }

 private:
  Matrix g_;
};

/// x^k for integer k >= 0 by repeated squaring.
inline double ipow(double x, int k) noexcept {
  double result = 1.0;
  while (k > 0) {
    if (k & 1) result *= x;
    x *= x;
    k >>= 1;
  }
  return result;
}

/// l_p norm, p >= 1 real.
double lp_norm(const Eigen::Ref<const Vector>& v, double p);

/// ((1/n) sum |x_i|^q)^{1/q}. Throws std::invalid_argument if q < 1 or x is
/// empty.
double expectation_q_norm(const Eigen::Ref<const Vector>& x, int q);

/// (1/n) sum |x_i|^q, the q-th power of the expectation norm.
double expectation_q_moment(const Eigen::Ref<const Vector>& x, int q);

/// ||X v||_q̄ for a direction v of length d.
double expectation_norm_of_image(const DataMatrix& x,
                                 const Eigen::Ref<const Vector>& v, int q);

GramMatrix gram(const DataMatrix& x);

struct NormalizedRows {
  std::vector<std::pair<Index, UnitVector>> rows;
  std::vector<Index> zero_rows;
};

/// x_i / ||x_i||_2 for every nonzero row; zero rows are reported separately.
NormalizedRows normalize_rows(const DataMatrix& x);

struct Prescaled {
  DataMatrix matrix;
  double scale;
};

/// Divides X by s = max_i ||x_i||_2. Throws DegenerateInputError for the
/// all-zero matrix.
Prescaled prescale(const DataMatrix& x);

/// Rows reordered lexicographically (stable), with the permutation that maps
/// canonical position -> original row index. Computations that run on the
/// canonical order depend only on the multiset of rows.
struct CanonicalRows {
  DataMatrix matrix;
  std::vector<Index> original_index;
};

CanonicalRows canonicalize_rows(const DataMatrix& x);

}  // namespace m2q
