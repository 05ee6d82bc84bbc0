#pragma once

// Test-side oracles. Each one is computed by a route that does not go
// through the library code it is used to check.

#include "jbc/core.hpp"
#include "jbc/dynamics.hpp"

#include <random>
#include <vector>

namespace jbc::testing {

/// a_k in [0.5, 2], b_k in [-1, 1]; n entries each beyond a_0 = 1.
inline JacobiCoefficients random_coefficients(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> ua(0.5, 2.0), ub(-1.0, 1.0);
  std::vector<double> a{1.0}, b;
  for (std::size_t k = 0; k < n; ++k) {
    a.push_back(ua(rng));
    b.push_back(ub(rng));
  }
  return JacobiCoefficients::finite(std::move(a), std::move(b));
}

/// Narrower ranges, a_k in [0.5, 1], b_k in [-0.5, 0.5]: fields stay of
/// order one over the horizons used in the tests.
inline JacobiCoefficients bounded_coefficients(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> ua(0.5, 1.0), ub(-0.5, 0.5);
  std::vector<double> a{1.0}, b;
  for (std::size_t k = 0; k < n; ++k) {
    a.push_back(ua(rng));
    b.push_back(ub(rng));
  }
  return JacobiCoefficients::finite(std::move(a), std::move(b));
}

/// s_m = <(A^M)^m e_1, e_1> by repeated products with a large enough block.
template <class T = double>
std::vector<T> matrix_power_moments(const JacobiCoefficients& c, std::size_t count) {
  const std::size_t M = count / 2 + 2;
  std::vector<T> a(M + 1), b(M + 1);
  for (std::size_t n = 1; n <= M; ++n) {
    a[n] = c.a_as<T>(n);
    b[n] = c.b_as<T>(n);
  }
  std::vector<T> v(M + 2, T(0)), w(M + 2, T(0));
  v[1] = T(1);
  std::vector<T> s;
  for (std::size_t m = 0; m < count; ++m) {
    s.push_back(v[1]);
    for (std::size_t n = 1; n <= M; ++n) {
      w[n] = b[n] * v[n] + (n < M ? a[n] * v[n + 1] : T(0)) + (n > 1 ? a[n - 1] * v[n - 1] : T(0));
    }
    std::swap(v, w);
  }
  return s;
}

/// Monomial coefficients of T_t by polynomial arithmetic on integer vectors.
inline std::vector<long long> chebyshev_monomials(std::size_t t) {
  std::vector<long long> prev{0}, cur{1};  // T_0, T_1
  if (t == 0) return prev;
  for (std::size_t k = 1; k < t; ++k) {
    std::vector<long long> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// C^T as the Gram matrix of the states reached at time T under unit
/// controls e_0..e_{T-1}, each simulated separately.
inline Matrix<double> gram_by_unit_controls(const JacobiCoefficients& c, std::size_t T) {
  Matrix<double> states(T, T);
  for (std::size_t k = 0; k < T; ++k) {
    const auto u = solve_semi_infinite<double>(c, BoundaryControl<double>::impulse(T, k), T);
    for (std::size_t n = 1; n <= T; ++n) states(n - 1, k) = u(n, static_cast<long>(T));
  }
  return states.transpose() * states;
}

inline double rel_diff(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

}  // namespace jbc::testing
