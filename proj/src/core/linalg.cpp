#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/error.hpp"

namespace svdc {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw Error(Errc::dimension_mismatch,
                "matrix entry count " + std::to_string(entries_.size()) + " does not match " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](double x) { return std::isfinite(x); });
}

void TruncatedPlane::validate() const {
  const std::size_t k = sigma.size();
  if (k == 0 || u.cols() != k || v.cols() != k || u.rows() == 0 || v.rows() == 0)
    throw Error(Errc::inconsistent_data, "truncated plane factors have inconsistent shapes");
  if (k > std::min(u.rows(), v.rows()))
    throw Error(Errc::inconsistent_data, "truncated plane rank exceeds min(rows, cols)");
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(sigma[i]) || sigma[i] < 0.0 || (i > 0 && sigma[i] > sigma[i - 1]))
      throw Error(Errc::inconsistent_data, "singular values must be finite, non-negative and non-increasing");
  }
  if (!u.all_finite() || !v.all_finite())
    throw Error(Errc::inconsistent_data, "truncated plane factors contain non-finite entries");
}

namespace {

// Column-major scratch matrix used by the solver so that every column is
// contiguous.
struct Columns {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Columns(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double* col(std::size_t j) { return data.data() + j * rows; }
  const double* col(std::size_t j) const { return data.data() + j * rows; }
};

// Squared column norms below this are treated as exact zeros.
constexpr double kNegligible = std::numeric_limits<double>::min();

struct PairGram {
  double aa;
  double bb;
  double ab;
};

PairGram pair_gram(const double* x, const double* y, std::size_t n) {
  double aa[4] = {0, 0, 0, 0};
  double bb[4] = {0, 0, 0, 0};
  double ab[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double xv = x[i + l];
      const double yv = y[i + l];
      aa[l] += xv * xv;
      bb[l] += yv * yv;
      ab[l] += xv * yv;
    }
  }
  for (; i < n; ++i) {
    aa[0] += x[i] * x[i];
    bb[0] += y[i] * y[i];
    ab[0] += x[i] * y[i];
  }
  return {(aa[0] + aa[1]) + (aa[2] + aa[3]), (bb[0] + bb[1]) + (bb[2] + bb[3]),
          (ab[0] + ab[1]) + (ab[2] + ab[3])};
}

double dot(const double* x, const double* y, std::size_t n) {
  double acc[4] = {0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    for (std::size_t l = 0; l < 4; ++l) acc[l] += x[i + l] * y[i + l];
  for (; i < n; ++i) acc[0] += x[i] * y[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void rotate(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xv = x[i];
    const double yv = y[i];
    x[i] = c * xv - s * yv;
    y[i] = s * xv + c * yv;
  }
}

// Fill columns [filled, cols) of q with an orthonormal completion of the
// first `filled` (orthonormal) columns. Householder QR of the filled block;
// the trailing columns of the implicit Q are the completion.
void complete_basis(Columns& q, std::size_t filled) {
  const std::size_t m = q.rows;
  if (filled >= q.cols) return;

  Columns work(m, filled);
  std::copy(q.data.begin(), q.data.begin() + static_cast<std::ptrdiff_t>(m * filled), work.data.begin());
  std::vector<double> beta(filled, 0.0);

  for (std::size_t j = 0; j < filled; ++j) {
    double* v = work.col(j) + j;
    const std::size_t len = m - j;
    const double e = dot(v, v, len);
    if (e < kNegligible) continue;
    const double norm = std::sqrt(e);
    const double alpha = v[0] >= 0.0 ? -norm : norm;
    beta[j] = 1.0 / (norm * (norm + std::abs(v[0])));
    v[0] -= alpha;
    for (std::size_t c = j + 1; c < filled; ++c) {
      double* x = work.col(c) + j;
      const double f = beta[j] * dot(v, x, len);
      for (std::size_t i = 0; i < len; ++i) x[i] -= f * v[i];
    }
  }

  for (std::size_t t = filled; t < q.cols; ++t) {
    double* y = q.col(t);
    std::fill(y, y + m, 0.0);
    y[t] = 1.0;
    for (std::size_t jj = filled; jj-- > 0;) {
      if (beta[jj] == 0.0) continue;
      const double* v = work.col(jj) + jj;
      double* x = y + jj;
      const double f = beta[jj] * dot(v, x, m - jj);
      for (std::size_t i = 0; i < m - jj; ++i) x[i] -= f * v[i];
    }
  }
}

// Stable reordering of the working columns (and V alongside) by decreasing
// norm at the start of every sweep.
void order_by_norm(Columns& w, Columns& v) {
  const std::size_t n = w.cols;
  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = dot(w.col(j), w.col(j), w.rows);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
  if (std::is_sorted(order.begin(), order.end())) return;
  Columns w2(w.rows, n);
  Columns v2(v.rows, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::copy_n(w.col(order[j]), w.rows, w2.col(j));
    std::copy_n(v.col(order[j]), v.rows, v2.col(j));
  }
  w = std::move(w2);
  v = std::move(v2);
}

// Orthogonalizes the columns of w in place, accumulating the rotations in v.
void jacobi_sweeps(Columns& w, Columns& v) {
  const std::size_t m = w.rows;
  const std::size_t n = w.cols;
  bool converged = n < 2;
  double residual = 0.0;
  int sweep = 0;
  while (!converged && sweep < jacobi::kMaxSweeps) {
    ++sweep;
    order_by_norm(w, v);
    bool rotated = false;
    residual = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const PairGram g = pair_gram(w.col(p), w.col(q), m);
        if (g.aa < kNegligible || g.bb < kNegligible || g.ab == 0.0) continue;
        const double off = std::abs(g.ab) / (std::sqrt(g.aa) * std::sqrt(g.bb));
        residual = std::max(residual, off);
        if (off <= jacobi::kTolerance) continue;

        const double zeta = (g.bb - g.aa) / (2.0 * g.ab);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        rotate(w.col(p), w.col(q), m, c, s);
        rotate(v.col(p), v.col(q), v.rows, c, s);
        rotated = true;
      }
    }
    converged = !rotated;
  }
  if (!converged) throw ConvergenceError(sweep, residual);
}

// Householder QR with column pivoting, A P = Q R. Reflector j lives in
// rows [j, m) of reflectors.col(j); R's strict upper triangle sits above it.
struct PivotedQr {
  Columns reflectors;
  std::vector<double> beta;
  std::vector<double> diag;
  std::vector<std::size_t> perm;  // column j of A P is column perm[j] of A

  explicit PivotedQr(const Matrix& a)
      : reflectors(a.rows(), a.cols()), beta(a.cols(), 0.0), diag(a.cols(), 0.0), perm(a.cols()) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) reflectors.col(c)[r] = a(r, c);
    std::iota(perm.begin(), perm.end(), std::size_t{0});

    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t len = m - j;
      std::size_t pivot = j;
      double best = -1.0;
      for (std::size_t c = j; c < n; ++c) {
        const double* col = reflectors.col(c) + j;
        const double e = dot(col, col, len);
        if (e > best) {
          best = e;
          pivot = c;
        }
      }
      if (pivot != j) {
        std::swap_ranges(reflectors.col(j), reflectors.col(j) + m, reflectors.col(pivot));
        std::swap(perm[j], perm[pivot]);
      }

      double* v = reflectors.col(j) + j;
      if (best < kNegligible) continue;
      const double norm = std::sqrt(best);
      const double alpha = v[0] >= 0.0 ? -norm : norm;
      beta[j] = 1.0 / (norm * (norm + std::abs(v[0])));
      v[0] -= alpha;
      diag[j] = alpha;
      for (std::size_t c = j + 1; c < n; ++c) {
        double* x = reflectors.col(c) + j;
        const double f = beta[j] * dot(v, x, len);
        for (std::size_t i = 0; i < len; ++i) x[i] -= f * v[i];
      }
    }
  }

  // R^T as an n x n column-major block (column c holds row c of R).
  Columns r_transposed() const {
    const std::size_t n = reflectors.cols;
    Columns x(n, n);
    for (std::size_t c = 0; c < n; ++c) {
      x.col(c)[c] = diag[c];
      for (std::size_t r = c + 1; r < n; ++r) x.col(c)[r] = reflectors.col(r)[c];
    }
    return x;
  }

  // y <- Q y for an m-vector whose entries past n are zero on input.
  void apply_q(double* y) const {
    const std::size_t m = reflectors.rows;
    for (std::size_t j = reflectors.cols; j-- > 0;) {
      if (beta[j] == 0.0) continue;
      const double* v = reflectors.col(j) + j;
      double* x = y + j;
      const double f = beta[j] * dot(v, x, m - j);
      for (std::size_t i = 0; i < m - j; ++i) x[i] -= f * v[i];
    }
  }
};

// Requires rows >= cols. With A P = Q R and the Jacobi factorization
// R^T = W V_r^T (W with orthogonal columns), A = (Q V_r) Sigma (P W Sigma^-1)^T.
SvdFactorization svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  const PivotedQr qr(a);
  Columns w = qr.r_transposed();
  Columns vr(n, n);
  for (std::size_t j = 0; j < n; ++j) vr.col(j)[j] = 1.0;
  jacobi_sweeps(w, vr);

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double e = dot(w.col(j), w.col(j), n);
    norms[j] = e < kNegligible ? 0.0 : std::sqrt(e);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdFactorization out;
  out.sigma.resize(n);
  Columns right(n, n);  // right singular vectors of A P
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = norms[order[i]];
    out.sigma[i] = s;
    if (s > 0.0) {
      const double* col = w.col(order[i]);
      double* dst = right.col(i);
      for (std::size_t r = 0; r < n; ++r) dst[r] = col[r] / s;
      ++nonzero;
    }
  }
  complete_basis(right, nonzero);

  out.v = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < n; ++r) out.v(qr.perm[r], j) = right.col(j)[r];

  out.u = Matrix(m, n);
  std::vector<double> y(m);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(y.begin(), y.end(), 0.0);
    std::copy_n(vr.col(order[j]), n, y.begin());
    qr.apply_q(y.data());
    for (std::size_t r = 0; r < m; ++r) out.u(r, j) = y[r];
  }
  return out;
}

void normalize_signs(SvdFactorization& f) {
  const std::size_t m = f.u.rows();
  const std::size_t n = f.v.rows();
  for (std::size_t j = 0; j < f.rank(); ++j) {
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < m; ++r) {
      const double mag = std::abs(f.u(r, j));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (f.u(arg, j) < 0.0) {
      for (std::size_t r = 0; r < m; ++r) f.u(r, j) = -f.u(r, j);
      for (std::size_t r = 0; r < n; ++r) f.v(r, j) = -f.v(r, j);
    }
  }
}

}  // namespace

SvdFactorization svd(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    throw Error(Errc::invalid_argument, "svd requires a non-empty matrix");
  if (!a.all_finite()) throw Error(Errc::invalid_argument, "svd input contains non-finite entries");

  SvdFactorization f;
  if (a.rows() >= a.cols()) {
    f = svd_tall(a);
  } else {
    f = svd_tall(a.transposed());
    std::swap(f.u, f.v);
  }
  normalize_signs(f);
  return f;
}

TruncatedPlane truncate(const SvdFactorization& f, std::size_t k) {
  if (k < 1 || k > f.rank()) {
    throw Error(Errc::invalid_rank,
                "rank " + std::to_string(k) + " outside [1, " + std::to_string(f.rank()) + "]");
  }
  const std::size_t m = f.u.rows();
  const std::size_t n = f.v.rows();
  const std::size_t r = f.rank();
  TruncatedPlane p;
  p.sigma.assign(f.sigma.begin(), f.sigma.begin() + static_cast<std::ptrdiff_t>(k));
  p.u = Matrix(m, k);
  p.v = Matrix(n, k);
  const auto u_src = f.u.entries();
  const auto v_src = f.v.entries();
  auto u_dst = p.u.entries();
  auto v_dst = p.v.entries();
  for (std::size_t i = 0; i < m; ++i)
    std::copy_n(u_src.begin() + static_cast<std::ptrdiff_t>(i * r), k, u_dst.begin() + static_cast<std::ptrdiff_t>(i * k));
  for (std::size_t i = 0; i < n; ++i)
    std::copy_n(v_src.begin() + static_cast<std::ptrdiff_t>(i * r), k, v_dst.begin() + static_cast<std::ptrdiff_t>(i * k));
  return p;
}

Matrix reconstruct(const TruncatedPlane& p) {
  const std::size_t m = p.rows();
  const std::size_t n = p.cols();
  const std::size_t k = p.rank();
  const Matrix vt = p.v.transposed();  // k x n, rows contiguous
  Matrix out(m, n);
  for (std::size_t r = 0; r < m; ++r) {
    double* row = &out(r, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const double coef = p.u(r, i) * p.sigma[i];
      if (coef == 0.0) continue;
      const double* vrow = vt.entries().data() + i * n;
      for (std::size_t c = 0; c < n; ++c) row[c] += coef * vrow[c];
    }
  }
  return out;
}

double frobenius_energy(const Matrix& a) noexcept {
  double sum = 0.0;
  for (double x : a.entries()) sum += x * x;
  return sum;
}

}  // namespace svdc
