#pragma once

// Hankel matrices of moments, the integer matrix Lambda_T linking monomials
// and the propagation polynomials, and the response <-> moment conversion
// r = Lambda s.

#include "jbc/core.hpp"
#include "jbc/dynamics.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace jbc {

template <class T = double>
struct HankelMatrix {
  Matrix<T> S;
  std::size_t size() const noexcept { return S.rows(); }
};

/// Lambda_T: row i holds the monomial coefficients of T_{i+1}. Exact integers.
struct ChebyshevTransform {
  Matrix<BigInt> L;
  std::size_t size() const noexcept { return L.rows(); }

  template <class T>
  Matrix<T> as() const {
    return L.map<T>([](const BigInt& x) {
      if constexpr (std::is_same_v<T, Rational>) {
        return Rational(x);
      } else {
        return T(x.convert_to<T>());
      }
    });
  }
};

/// S[i][j] = s_{i+j}, 0 <= i, j < T.
template <class T>
HankelMatrix<T> build_hankel(const MomentSequence<T>& s, std::size_t size) {
  if (size == 0) throw InvalidArgument("Hankel size must be positive");
  if (s.size() < 2 * size - 1)
    throw InvalidArgument("insufficient moments: need " + std::to_string(2 * size - 1) + ", have " +
                          std::to_string(s.size()));
  HankelMatrix<T> h{Matrix<T>(size, size)};
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) h.S(i, j) = s[i + j];
  return h;
}

/// alpha_ij = binom((i+j)/2, j) (-1)^((i+j)/2 + j) for i >= j, i+j even; else 0.
ChebyshevTransform build_lambda(std::size_t size);

/// r = Lambda s, exact in Rational.
template <class T>
ResponseVector<T> moments_to_response(const MomentSequence<T>& s) {
  const std::size_t n = s.size();
  if (n == 0) return {};
  const Matrix<T> L = build_lambda(n).template as<T>();
  ResponseVector<T> r;
  r.values.assign(n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i % 2; j <= i; j += 2) r.values[i] += L(i, j) * s[j];
  return r;
}

/// s = Lambda^{-1} r by forward substitution (Lambda is unit lower triangular).
template <class T>
MomentSequence<T> response_to_moments(const ResponseVector<T>& r) {
  const std::size_t n = r.size();
  if (n == 0) return {};
  const Matrix<T> L = build_lambda(n).template as<T>();
  MomentSequence<T> s;
  s.values.assign(n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    T acc = r[i];
    for (std::size_t j = i % 2; j < i; j += 2) acc -= L(i, j) * s.values[j];
    s.values[i] = acc;
  }
  return s;
}

/// Coefficients c_1..c_T with lambda^m = sum_k c_k T_k(lambda), m < T: row m of Lambda^{-1}.
template <class T>
std::vector<T> monomial_in_chebyshev_basis(std::size_t m, std::size_t size) {
  if (m >= size) throw InvalidArgument("monomial degree must be below the basis size");
  const Matrix<T> L = build_lambda(size).template as<T>();
  // solve x^T L = e_m^T, i.e. L^T x = e_m, back substitution on the upper factor
  std::vector<T> x(size, T(0));
  for (std::size_t i = size; i-- > 0;) {
    T acc = i == m ? T(1) : T(0);
    for (std::size_t k = i + 1; k < size; ++k) acc -= L(k, i) * x[k];
    x[i] = acc;
  }
  return x;
}

/// s_k = int lambda^k d rho for the coefficients, k < count (via the response vector).
template <class T = double>
MomentSequence<T> moments_from_coefficients(const JacobiCoefficients& coeffs, std::size_t count) {
  if (count == 0) return {};
  return response_to_moments(response_vector<T>(coeffs, count));
}

/// Catalan moments of the semicircle law (1/2pi) sqrt(4 - x^2) on (-2, 2).
template <class T = double>
MomentSequence<T> semicircle_moments(std::size_t count) {
  MomentSequence<T> s;
  s.values.assign(count, T(0));
  BigInt catalan = 1;
  for (std::size_t k = 0; 2 * k < count; ++k) {
    if constexpr (std::is_same_v<T, Rational>) {
      s.values[2 * k] = Rational(catalan);
    } else {
      s.values[2 * k] = catalan.convert_to<T>();
    }
    catalan = catalan * 2 * (2 * k + 1) / (k + 2);
  }
  return s;
}

struct HankelPositivityReport {
  /// lambda_N = min eig(S_N), N = 1..N_max.
  std::vector<double> min_eigenvalues;
  bool positive = true;
  /// First N (1-based) whose section is not positive definite.
  std::optional<std::size_t> first_failure;
  /// Sections where lambda_N fell below 1e3 * eps * ||S_N|| (digits lost).
  std::vector<std::size_t> conditioning_warnings;
};

template <class T>
HankelPositivityReport hankel_positivity(const MomentSequence<T>& s, std::size_t N_max) {
  const HankelMatrix<T> full = build_hankel(s, N_max);
  HankelPositivityReport rep;
  const double eps = std::is_same_v<T, double> ? std::numeric_limits<double>::epsilon()
                                               : to_double(epsilon_of<Extended>());
  for (std::size_t N = 1; N <= N_max; ++N) {
    const auto ev = eigenvalues_of(full.S.leading(N));
    const double lo = ev.front();
    const double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
    rep.min_eigenvalues.push_back(lo);
    if (!(lo > 0.0) && !rep.first_failure) {
      rep.positive = false;
      rep.first_failure = N;
    }
    if (lo < 1e3 * eps * norm) rep.conditioning_warnings.push_back(N);
  }
  if constexpr (is_exact_v<T>) {
    // the verdict is decided exactly; the eigenvalues above are only certificates
    const auto f = ldlt(full.S);
    rep.positive = f.ok();
    rep.first_failure.reset();
    if (!f.ok()) rep.first_failure = f.failed_at + 1;
  }
  return rep;
}

}  // namespace jbc
