#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace svdc {

// Dense real matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<double> entries() noexcept { return entries_; }
  std::span<const double> entries() const noexcept { return entries_; }

  Matrix transposed() const;
  bool all_finite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

// Full thin factorization A = U diag(sigma) V^T with r = min(m, n) columns.
struct SvdFactorization {
  Matrix u;                   // m x r
  std::vector<double> sigma;  // r entries, non-increasing, non-negative
  Matrix v;                   // n x r

  std::size_t rank() const noexcept { return sigma.size(); }
};

// Rank-k factors of one plane; this is what gets stored.
struct TruncatedPlane {
  Matrix u;                   // m x k
  std::vector<double> sigma;  // k entries
  Matrix v;                   // n x k

  std::size_t rows() const noexcept { return u.rows(); }
  std::size_t cols() const noexcept { return v.rows(); }
  std::size_t rank() const noexcept { return sigma.size(); }
  // Stored values: k singular values plus k(m + n) vector entries.
  std::size_t coefficient_count() const noexcept { return rank() * (rows() + cols() + 1); }

  // Throws inconsistent_data when factor shapes or sigma ordering are invalid.
  void validate() const;
};

namespace jacobi {
inline constexpr int kMaxSweeps = 30;
inline constexpr double kTolerance = 1e-12;
}  // namespace jacobi

/// One-sided (Hestenes) Jacobi SVD, run on the triangular factor of a
/// column-pivoted QR of the input. Deterministic: cyclic pair order, stable
/// sort on the singular values, and the largest-magnitude entry of every
/// left singular vector made non-negative. Wide inputs are factored through
/// their transpose. Columns of U belonging to zero singular values are
/// completed to an orthonormal basis.
SvdFactorization svd(const Matrix& a);

TruncatedPlane truncate(const SvdFactorization& f, std::size_t k);

// Sum_i sigma_i u_i v_i^T. No clamping.
Matrix reconstruct(const TruncatedPlane& p);

double frobenius_energy(const Matrix& a) noexcept;

}  // namespace svdc
