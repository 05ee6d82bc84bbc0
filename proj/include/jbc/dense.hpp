#pragma once

// Minimal dense matrix plus the factorizations the toolkit needs in every
// precision mode. Eigen handles double-precision eigenproblems; the
// multiprecision paths use the routines here.

#include "jbc/errors.hpp"
#include "jbc/precision.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace jbc {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Top-left k x k block.
  Matrix leading(std::size_t k) const {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  template <class U, class Convert>
  Matrix<U> map(Convert&& convert) const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = convert((*this)(i, j));
    return out;
  }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix product: dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == T(0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T, class V>
std::vector<V> operator*(const Matrix<T>& a, const std::vector<V>& x) {
  if (a.cols() != x.size()) throw InvalidArgument("matrix-vector product: dimension mismatch");
  std::vector<V> y(a.rows(), V(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += V(a(i, j)) * x[j];
  return y;
}

/// J M J with J the exchange (anti-identity) matrix.
template <class T>
Matrix<T> exchange_flip(const Matrix<T>& m) {
  const std::size_t r = m.rows(), c = m.cols();
  Matrix<T> out(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out(i, j) = m(r - 1 - i, c - 1 - j);
  return out;
}

template <class T>
bool is_symmetric(const Matrix<T>& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == m(j, i))) return false;
  return true;
}

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      T diff = a(i, j) - b(i, j);
      d = std::max(d, std::abs(to_double(diff)));
    }
  return d;
}

template <class T>
Matrix<double> to_double_matrix(const Matrix<T>& m) {
  return m.template map<double>([](const T& x) { return to_double(x); });
}

// ---------------------------------------------------------------------------
// Unpivoted Cholesky, A = U^T U with U upper triangular, positive diagonal.

template <class T>
struct CholeskyFactor {
  Matrix<T> upper;
  /// Index of the first non-positive pivot, or npos.
  std::size_t failed_at = npos;
  /// min_k pivot_k / A(k,k): fraction of the diagonal left after elimination.
  double min_pivot_ratio = 1.0;
  std::size_t min_pivot_index = 0;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  bool ok() const noexcept { return failed_at == npos; }
};

template <class T>
CholeskyFactor<T> cholesky_upper(const Matrix<T>& a) {
  static_assert(!is_exact_v<T>, "use ldlt() for exact arithmetic");
  using std::sqrt;
  if (!a.square()) throw InvalidArgument("cholesky: matrix is not square");
  const std::size_t n = a.rows();
  CholeskyFactor<T> f;
  f.upper = Matrix<T>(n, n);
  auto& u = f.upper;
  for (std::size_t k = 0; k < n; ++k) {
    T pivot = a(k, k);
    for (std::size_t i = 0; i < k; ++i) pivot -= u(i, k) * u(i, k);
    if (!(pivot > T(0))) {
      f.failed_at = k;
      return f;
    }
    if (a(k, k) > T(0)) {
      const double ratio = to_double(T(pivot / a(k, k)));
      if (ratio < f.min_pivot_ratio) {
        f.min_pivot_ratio = ratio;
        f.min_pivot_index = k;
      }
    }
    u(k, k) = sqrt(pivot);
    for (std::size_t j = k + 1; j < n; ++j) {
      T s = a(k, j);
      for (std::size_t i = 0; i < k; ++i) s -= u(i, k) * u(i, j);
      u(k, j) = s / u(k, k);
    }
  }
  return f;
}

/// A = U^T D U with U unit upper triangular; square-root free, so exact in Rational.
template <class T>
struct LdltFactor {
  Matrix<T> unit_upper;
  std::vector<T> pivots;
  std::size_t failed_at = npos;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  bool ok() const noexcept { return failed_at == npos; }
};

template <class T>
LdltFactor<T> ldlt(const Matrix<T>& a) {
  if (!a.square()) throw InvalidArgument("ldlt: matrix is not square");
  const std::size_t n = a.rows();
  LdltFactor<T> f;
  f.unit_upper = Matrix<T>::identity(n);
  f.pivots.assign(n, T(0));
  auto& u = f.unit_upper;
  for (std::size_t k = 0; k < n; ++k) {
    T d = a(k, k);
    for (std::size_t i = 0; i < k; ++i) d -= u(i, k) * u(i, k) * f.pivots[i];
    f.pivots[k] = d;
    if (!(d > T(0))) {
      f.failed_at = k;
      return f;
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      T s = a(k, j);
      for (std::size_t i = 0; i < k; ++i) s -= u(i, k) * u(i, j) * f.pivots[i];
      u(k, j) = s / d;
    }
  }
  return f;
}

/// Solves U^T U x = b for a successful Cholesky factor. V may be complex.
template <class T, class V>
std::vector<V> cholesky_solve(const CholeskyFactor<T>& f, std::vector<V> b) {
  const auto& u = f.upper;
  const std::size_t n = u.rows();
  if (b.size() != n) throw InvalidArgument("cholesky_solve: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) {  // U^T y = b
    V s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= V(u(k, i)) * b[k];
    b[i] = s / V(u(i, i));
  }
  for (std::size_t i = n; i-- > 0;) {  // U x = y
    V s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= V(u(i, k)) * b[k];
    b[i] = s / V(u(i, i));
  }
  return b;
}

// ---------------------------------------------------------------------------
// Symmetric eigenvalues.

/// Ascending eigenvalues via Eigen's self-adjoint solver.
std::vector<double> symmetric_eigenvalues(const Matrix<double>& a);

/// Largest singular value via Eigen's SVD.
double largest_singular_value(const Matrix<double>& a);

/// Ascending eigenvalues by cyclic Jacobi rotations; any floating type.
template <class T>
std::vector<T> jacobi_eigenvalues(Matrix<T> a, int max_sweeps = 100) {
  using std::abs;
  using std::sqrt;
  if (!a.square()) throw InvalidArgument("eigenvalues: matrix is not square");
  const std::size_t n = a.rows();
  const T eps = epsilon_of<T>();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    T off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    T diag = 0;
    for (std::size_t p = 0; p < n; ++p) diag += a(p, p) * a(p, p);
    if (off == T(0) || off <= eps * eps * diag) {
      std::vector<T> ev(n);
      for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
      std::sort(ev.begin(), ev.end());
      return ev;
    }
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        if (apq == T(0)) continue;
        const T theta = (a(q, q) - a(p, p)) / (2 * apq);
        const T sign = theta < T(0) ? T(-1) : T(1);
        const T t = sign / (abs(theta) + sqrt(theta * theta + 1));
        const T c = 1 / sqrt(t * t + 1);
        const T s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  throw EigensolverFailure("Jacobi eigenvalue iteration did not converge");
}

/// Eigenvalues in the precision natural for T: Eigen for double, Jacobi
/// rotations in Extended for Extended and Rational input.
template <class T>
std::vector<double> eigenvalues_of(const Matrix<T>& a) {
  if constexpr (std::is_same_v<T, double>) {
    return symmetric_eigenvalues(a);
  } else {
    auto ext = a.template map<Extended>([](const T& x) { return to_extended(x); });
    auto ev = jacobi_eigenvalues(std::move(ext));
    std::vector<double> out;
    out.reserve(ev.size());
    for (const auto& v : ev) out.push_back(v.template convert_to<double>());
    return out;
  }
}

}  // namespace jbc
