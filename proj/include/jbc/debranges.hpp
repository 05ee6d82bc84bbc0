#pragma once

// Krein equations, reproducing kernels of the polynomial spaces B_A^T, the
// scalar product [F, G] = (C_T f, g) and the Hermite-Biehler function E_T.
//
// Functions of B_A^T are represented by coefficient vectors f over the
// basis T_1..T_T, F(lambda) = sum_k f_k T_k(lambda). Inner products are
// conjugate-linear in the first slot.

#include "jbc/connecting.hpp"
#include "jbc/core.hpp"
#include "jbc/moments.hpp"
#include "jbc/spectral.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace jbc {

template <class R = double>
struct KreinSolution {
  std::vector<Complex<R>> j;
  Complex<R> z;
  /// max |C j - rhs| / max |rhs|.
  double residual = 0.0;
  std::size_t horizon() const noexcept { return j.size(); }
};

namespace detail {

template <class C>
C conjugate(const C& z) {
  using std::conj;
  return conj(z);
}

template <class R, class V>
double relative_residual(const Matrix<R>& m, const std::vector<V>& x, const std::vector<V>& rhs) {
  using std::abs;
  const auto mx = m * x;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    num = std::max(num, to_double(R(abs(V(mx[i] - rhs[i])))));
    den = std::max(den, to_double(R(abs(rhs[i]))));
  }
  return den > 0.0 ? num / den : num;
}

template <class R>
CholeskyFactor<R> factor_positive(const Matrix<R>& m, const char* what) {
  auto f = cholesky_upper(m);
  if (!f.ok())
    throw NotPositiveDefinite(std::string(what) +
                                  " is not positive definite; only genuine response data gives a positive matrix",
                              f.failed_at);
  return f;
}

}  // namespace detail

/// Solves C_T j = conj(T_1(z), ..., T_T(z)) through the Cholesky factor.
template <class R>
KreinSolution<R> krein_solve(const ConnectingMatrix<R>& c, const Complex<R>& z) {
  static_assert(!is_exact_v<R>, "Krein solves need a floating precision");
  using V = Complex<R>;
  if (c.orientation != Orientation::CornerTop)
    throw InvalidArgument("krein_solve expects the corner-top orientation C_T");
  const std::size_t T = c.size();
  const auto f = detail::factor_positive(c.C, "connecting matrix");
  const auto cheb = chebyshev_values(T, z);
  std::vector<V> rhs;
  rhs.reserve(T);
  for (std::size_t k = 1; k <= T; ++k) rhs.push_back(detail::conjugate(cheb[k]));
  KreinSolution<R> out{cholesky_solve(f, rhs), z};
  out.residual = detail::relative_residual(c.C, out.j, rhs);
  return out;
}

/// Solves S_T f = conj(1, z, ..., z^{T-1}); f = Lambda_T^* j.
template <class R>
std::vector<Complex<R>> krein_solve_hankel(const HankelMatrix<R>& h, const Complex<R>& z) {
  static_assert(!is_exact_v<R>, "Krein solves need a floating precision");
  using V = Complex<R>;
  const std::size_t T = h.size();
  const auto f = detail::factor_positive(h.S, "Hankel matrix");
  std::vector<V> rhs;
  rhs.reserve(T);
  V power = V(1);
  for (std::size_t k = 0; k < T; ++k) {
    rhs.push_back(detail::conjugate(power));
    power *= z;
  }
  return cholesky_solve(f, rhs);
}

/// J_z^T(lambda) = sum_{n=1}^T conj(p_n(z)) p_n(lambda).
template <class S>
S kernel_finite(const JacobiCoefficients& coeffs, const S& z, const S& lambda, std::size_t T) {
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  const auto pz = p_values(coeffs, T, z);
  const auto pl = p_values(coeffs, T, lambda);
  S acc = S(0);
  for (std::size_t n = 0; n < T; ++n) acc += detail::conjugate(pz[n]) * pl[n];
  return acc;
}

/// J_z^T(lambda) = sum_k T_k(lambda) j_k from a Krein solution.
template <class R>
Complex<R> kernel_krein(const KreinSolution<R>& sol, const Complex<R>& lambda) {
  const auto cheb = chebyshev_values(sol.horizon(), lambda);
  Complex<R> acc = Complex<R>(0);
  for (std::size_t k = 1; k <= sol.horizon(); ++k) acc += cheb[k] * sol.j[k - 1];
  return acc;
}

/// [F, G] = (C_T f, g) = sum_i conj((C_T f)_i) g_i.
template <class R, class V>
V scalar_product(const std::vector<V>& f, const std::vector<V>& g, const ConnectingMatrix<R>& c) {
  if (c.orientation != Orientation::CornerTop)
    throw InvalidArgument("scalar_product expects the corner-top orientation C_T");
  if (f.size() != c.size() || g.size() != c.size())
    throw InvalidArgument("scalar_product: coefficient vectors must have length T");
  const auto cf = c.C * f;
  V acc = V(0);
  for (std::size_t i = 0; i < g.size(); ++i) acc += detail::conjugate(cf[i]) * g[i];
  return acc;
}

/// Evaluates F(z) = sum_k f_k T_k(z).
template <class V>
V evaluate_chebyshev_series(const std::vector<V>& f, const V& z) {
  const auto cheb = chebyshev_values(f.size(), z);
  V acc = V(0);
  for (std::size_t k = 1; k <= f.size(); ++k) acc += f[k - 1] * cheb[k];
  return acc;
}

struct InfiniteKernel {
  std::complex<double> value;
  std::size_t order = 0;
};

/// Partial sums of sum_n conj(p_n(z)) p_n(lambda) until `window` consecutive
/// terms are below tol relative to sum |term|. Throws SeriesDivergence past `cap`.
InfiniteKernel kernel_infinite(const JacobiCoefficients& coeffs, std::complex<double> z, std::complex<double> lambda,
                               double tol = 1e-12, std::size_t window = 5, std::size_t cap = 10000);

/// E_T(z) = sqrt(pi) (1 - iz) J_i^T(z) / sqrt(J_i^T(i)).
class HermiteBiehlerFunction {
 public:
  HermiteBiehlerFunction(const JacobiCoefficients& coeffs, std::size_t T);

  std::complex<double> operator()(std::complex<double> z) const;
  /// J_i^T(z).
  std::complex<double> kernel_at_i(std::complex<double> z) const;
  /// J_i^T(i) = sum |p_n(i)|^2.
  double norm_squared() const noexcept { return norm_sq_; }
  std::size_t horizon() const noexcept { return p_at_i_conj_.size(); }

 private:
  JacobiCoefficients coeffs_;
  std::vector<std::complex<double>> p_at_i_conj_;
  double norm_sq_ = 0.0;
};

HermiteBiehlerFunction hb_function(const JacobiCoefficients& coeffs, std::size_t T);

/// (conj(E(z)) E(xi) - E(conj z) conj(E(conj xi))) / (2i (conj z - xi)); the
/// removable singularity is bridged by a symmetric difference quotient.
std::complex<double> kernel_from_E(const HermiteBiehlerFunction& E, std::complex<double> z, std::complex<double> xi);

struct KernelConstant {
  /// Mean of kernel_from_E / kernel_finite over the sample points.
  std::complex<double> mean;
  /// Largest |ratio - mean| / |mean|.
  double spread = 0.0;
  std::size_t samples = 0;
};

/// Measures the constant linking the kernel built from E to the polynomial kernel.
KernelConstant measure_kernel_constant(const HermiteBiehlerFunction& E, const JacobiCoefficients& coeffs,
                                       const std::vector<std::pair<std::complex<double>, std::complex<double>>>& points);

}  // namespace jbc
