#include "jbc/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>

namespace jbc {

SpectralData spectral_data(const JacobiCoefficients& coeffs, std::size_t N) {
  if (N == 0) throw InvalidArgument("spectral_data: N must be positive");
  auto [a, b] = coeffs.materialize<double>(N, N);
  Eigen::VectorXd diag(N);
  Eigen::VectorXd sub(N > 1 ? N - 1 : 0);
  for (std::size_t i = 0; i < N; ++i) diag(i) = b[i];
  for (std::size_t i = 0; i + 1 < N; ++i) sub(i) = a[i + 1];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw EigensolverFailure("tridiagonal eigensolver failed for N = " + std::to_string(N));

  std::vector<SpectralPair> pairs;
  pairs.reserve(N);
  for (std::size_t k = 0; k < N; ++k) {
    const double v0 = solver.eigenvectors()(0, static_cast<Eigen::Index>(k));
    pairs.push_back({solver.eigenvalues()(static_cast<Eigen::Index>(k)), v0 * v0});
  }
  try {
    return SpectralData(std::move(pairs));
  } catch (const InvalidArgument& e) {
    throw EigensolverFailure(std::string("degenerate spectral data: ") + e.what());
  }
}

std::vector<double> normalizing_constants(const JacobiCoefficients& coeffs, const SpectralData& data) {
  std::vector<double> rho;
  rho.reserve(data.size());
  for (const auto& [lambda, weight] : data.pairs()) {
    double s = 0.0;
    for (double p : p_values(coeffs, data.size(), lambda)) s += p * p;
    rho.push_back(s);
  }
  return rho;
}

std::complex<double> fourier_image(const BoundaryControl<std::complex<double>>& control, std::complex<double> z) {
  const std::size_t T = control.horizon();
  const auto cheb = chebyshev_values(T, z);
  std::complex<double> acc = 0.0;
  for (std::size_t k = 1; k <= T; ++k) acc += cheb[k] * control[T - k];
  return acc;
}

WaveField<std::complex<double>> solution_via_spectrum(const JacobiCoefficients& coeffs, std::size_t N,
                                                      const BoundaryControl<std::complex<double>>& control,
                                                      std::size_t T) {
  using C = std::complex<double>;
  const SpectralData data = spectral_data(coeffs, N);
  WaveField<C> v(N + 1, T);
  for (long t = 0; t <= static_cast<long>(T); ++t)
    v(0, t) = detail::control_at(control, t);

  for (const auto& [lambda, weight] : data.pairs()) {
    const auto cheb = chebyshev_values(T, lambda);
    const auto p = p_values(coeffs, N, lambda);
    for (std::size_t t = 1; t <= T; ++t) {
      C image = 0.0;
      for (std::size_t k = 1; k <= t; ++k) image += cheb[k] * detail::control_at(control, static_cast<long>(t - k));
      for (std::size_t n = 1; n <= N; ++n) v(n, static_cast<long>(t)) += weight * image * p[n - 1];
    }
  }
  return v;
}

ResponseVector<double> response_via_spectrum(const SpectralData& data, std::size_t L) {
  ResponseVector<double> r;
  r.values.assign(L, 0.0);
  for (const auto& [lambda, weight] : data.pairs()) {
    const auto cheb = chebyshev_values(L, lambda);
    for (std::size_t t = 1; t <= L; ++t) r.values[t - 1] += weight * cheb[t];
  }
  return r;
}

ExtensionParameter extension_parameter(const JacobiCoefficients& coeffs, std::size_t N_max, double tolerance) {
  if (N_max < 2) throw InvalidArgument("extension_parameter needs N_max >= 2");
  ExtensionParameter out;
  const auto p = p_values(coeffs, N_max, 0.0);
  const auto q = q_values(coeffs, N_max, 0.0);

  double sum = 0.0, last_term = 0.0;
  for (std::size_t n = 1; n <= N_max; ++n) {
    const double term = p[n - 1] * p[n - 1] + q[n - 1] * q[n - 1];
    sum += term;
    last_term = std::max(term, n >= 2 ? p[n - 2] * p[n - 2] + q[n - 2] * q[n - 2] : 0.0);
    if (n < 2) continue;
    if (p[n - 1] == 0.0) {
      out.skipped.push_back(n);
      continue;
    }
    out.sequence.emplace_back(n, -q[n - 1] / p[n - 1]);
  }
  // two consecutive terms guard against parity zeros
  out.square_summable = N_max >= 8 && std::isfinite(sum) && last_term <= 1e-6 * sum;

  if (!out.sequence.empty()) out.value = out.sequence.back().second;
  if (out.sequence.size() >= 2) {
    const double h1 = out.sequence[out.sequence.size() - 1].second;
    const double h0 = out.sequence[out.sequence.size() - 2].second;
    out.last_delta = std::abs(h1 - h0);
    out.converged = std::isfinite(out.last_delta) && out.last_delta < tolerance;
  }
  out.divergence_flag = !(out.converged && out.square_summable);
  return out;
}

}  // namespace jbc
