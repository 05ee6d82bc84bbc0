#pragma once

// Orthogonal polynomials of the first (p) and second (q) kind, the
// propagation polynomials T_t, spectral data of A^N and quadrature against
// the discrete spectral measure.
//
// Indexing: p_n and q_n are indexed from 1 (p_1 = 1); T_t from 0 (T_0 = 0,
// T_1 = 1). In the recurrence T_{t+1} + T_{t-1} = z T_t these are the
// classical second-kind Chebyshev polynomials at z/2: T_t(z) = U_{t-1}(z/2).

#include "jbc/core.hpp"
#include "jbc/dynamics.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace jbc {

/// p_1(z), ..., p_{n_max}(z) by the three-term recurrence.
/// Needs b_1..b_{n_max-1} and a_1..a_{n_max-1}.
template <class S>
std::vector<S> p_values(const JacobiCoefficients& coeffs, std::size_t n_max, const S& z) {
  using R = real_scalar_t<S>;
  std::vector<S> p;
  if (n_max == 0) return p;
  p.reserve(n_max);
  p.push_back(S(1));
  if (n_max == 1) return p;
  detail::CoefficientCursor<R> c(coeffs);
  p.push_back((z - S(c.b(1))) / S(c.a(1)));
  for (std::size_t n = 2; n < n_max; ++n)
    p.push_back(((z - S(c.b(n))) * p[n - 1] - S(c.a(n - 1)) * p[n - 2]) / S(c.a(n)));
  return p;
}

/// q_1(z), ..., q_{n_max}(z): same recurrence with q_1 = 0, q_2 = 1/a_1.
template <class S>
std::vector<S> q_values(const JacobiCoefficients& coeffs, std::size_t n_max, const S& z) {
  using R = real_scalar_t<S>;
  std::vector<S> q;
  if (n_max == 0) return q;
  q.reserve(n_max);
  q.push_back(S(0));
  if (n_max == 1) return q;
  detail::CoefficientCursor<R> c(coeffs);
  q.push_back(S(1) / S(c.a(1)));
  for (std::size_t n = 2; n < n_max; ++n)
    q.push_back(((z - S(c.b(n))) * q[n - 1] - S(c.a(n - 1)) * q[n - 2]) / S(c.a(n)));
  return q;
}

/// p_n(z), n >= 1.
template <class S>
S eval_p(const JacobiCoefficients& coeffs, std::size_t n, const S& z) {
  if (n == 0) throw InvalidArgument("p_n is indexed from 1");
  return p_values(coeffs, n, z).back();
}

/// q_n(z), n >= 1.
template <class S>
S eval_q(const JacobiCoefficients& coeffs, std::size_t n, const S& z) {
  if (n == 0) throw InvalidArgument("q_n is indexed from 1");
  return q_values(coeffs, n, z).back();
}

/// T_0(z), ..., T_{t_max}(z).
template <class S>
std::vector<S> chebyshev_values(std::size_t t_max, const S& z) {
  std::vector<S> v;
  v.reserve(t_max + 1);
  v.push_back(S(0));
  if (t_max >= 1) v.push_back(S(1));
  for (std::size_t t = 2; t <= t_max; ++t) v.push_back(z * v[t - 1] - v[t - 2]);
  return v;
}

template <class S>
S eval_chebyshev(std::size_t t, const S& z) {
  return chebyshev_values(t, z)[t];
}

/// Eigenvalues of A^N and weights w_k = 1/rho_k (squared first eigenvector
/// components), ascending. The weights sum to 1.
SpectralData spectral_data(const JacobiCoefficients& coeffs, std::size_t N);

/// rho_k = sum_{i=1}^N p_i(lambda_k)^2 evaluated at the nodes of `data`.
std::vector<double> normalizing_constants(const JacobiCoefficients& coeffs, const SpectralData& data);

/// sum_k w_k f(lambda_k), summed in node order.
template <class F>
auto quadrature(const SpectralData& data, F&& f) {
  using Out = decltype(f(0.0));
  Out acc = Out(0);
  for (const auto& [lambda, weight] : data.pairs()) acc += Out(weight) * f(lambda);
  return acc;
}

/// (F u^f_{.,T})(z) = sum_{k=1}^T T_k(z) f_{T-k}, T = control horizon.
std::complex<double> fourier_image(const BoundaryControl<std::complex<double>>& control, std::complex<double> z);

/// v^f_{n,t} = int sum_{k=1}^t T_k(lambda) f_{t-k} p_n(lambda) d rho_N(lambda),
/// the spectral representation of the finite-system field.
WaveField<std::complex<double>> solution_via_spectrum(const JacobiCoefficients& coeffs, std::size_t N,
                                                      const BoundaryControl<std::complex<double>>& control,
                                                      std::size_t T);

/// r_{t-1} = int T_t d rho, t = 1..L.
ResponseVector<double> response_via_spectrum(const SpectralData& data, std::size_t L);

struct ExtensionParameter {
  /// Last finite value of -q_n(0)/p_n(0); empty when no index had p_n(0) != 0.
  std::optional<double> value;
  /// |h_N - h_{N'}| between the last two finite values.
  double last_delta = 0.0;
  bool converged = false;
  /// Whether sum p_n(0)^2 + q_n(0)^2 looked summable (limit circle behaviour).
  bool square_summable = false;
  /// Set when no usable limit exists: no convergence, or the solutions at 0
  /// are not square summable so h carries no meaning.
  bool divergence_flag = true;
  std::vector<std::size_t> skipped;  // indices with p_n(0) = 0
  std::vector<std::pair<std::size_t, double>> sequence;
};

/// h = -lim q_n(0)/p_n(0), the parameter of the self-adjoint extension whose
/// spectral measure is the weak limit of rho_N.
ExtensionParameter extension_parameter(const JacobiCoefficients& coeffs, std::size_t N_max,
                                       double tolerance = 1e-10);

}  // namespace jbc
