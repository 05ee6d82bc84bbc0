#include "jbc/debranges.hpp"

#include <cmath>
#include <numbers>

namespace jbc {

InfiniteKernel kernel_infinite(const JacobiCoefficients& coeffs, std::complex<double> z, std::complex<double> lambda,
                               double tol, std::size_t window, std::size_t cap) {
  using C = std::complex<double>;
  if (window == 0) throw InvalidArgument("window must be positive");
  // p_{n-1}, p_n at z and lambda
  C pz_prev = 0.0, pz = 1.0, pl_prev = 0.0, pl = 1.0;
  C sum = 0.0;
  double abs_sum = 0.0;
  std::size_t quiet = 0;
  for (std::size_t n = 1; n <= cap; ++n) {
    const C term = std::conj(pz) * pl;
    sum += term;
    abs_sum += std::abs(term);
    if (!std::isfinite(abs_sum)) break;
    quiet = std::abs(term) <= tol * abs_sum ? quiet + 1 : 0;
    if (quiet >= window) return {sum, n};
    const double a_n = coeffs.a(n), b_n = coeffs.b(n), a_prev = coeffs.a(n - 1);
    const C pz_next = ((z - b_n) * pz - (n >= 2 ? a_prev * pz_prev : C(0))) / a_n;
    const C pl_next = ((lambda - b_n) * pl - (n >= 2 ? a_prev * pl_prev : C(0))) / a_n;
    pz_prev = pz;
    pz = pz_next;
    pl_prev = pl;
    pl = pl_next;
  }
  throw SeriesDivergence("series not converging: likely limit point");
}

HermiteBiehlerFunction::HermiteBiehlerFunction(const JacobiCoefficients& coeffs, std::size_t T) : coeffs_(coeffs) {
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  for (const auto& p : p_values(coeffs, T, std::complex<double>(0.0, 1.0))) {
    p_at_i_conj_.push_back(std::conj(p));
    norm_sq_ += std::norm(p);
  }
}

std::complex<double> HermiteBiehlerFunction::kernel_at_i(std::complex<double> z) const {
  const auto pz = p_values(coeffs_, horizon(), z);
  std::complex<double> acc = 0.0;
  for (std::size_t n = 0; n < pz.size(); ++n) acc += p_at_i_conj_[n] * pz[n];
  return acc;
}

std::complex<double> HermiteBiehlerFunction::operator()(std::complex<double> z) const {
  const std::complex<double> i(0.0, 1.0);
  return std::sqrt(std::numbers::pi) * (1.0 - i * z) * kernel_at_i(z) / std::sqrt(norm_sq_);
}

HermiteBiehlerFunction hb_function(const JacobiCoefficients& coeffs, std::size_t T) {
  return HermiteBiehlerFunction(coeffs, T);
}

namespace {

std::complex<double> e_kernel_raw(const HermiteBiehlerFunction& E, std::complex<double> z, std::complex<double> xi) {
  const std::complex<double> i(0.0, 1.0);
  const auto num = std::conj(E(z)) * E(xi) - E(std::conj(z)) * std::conj(E(std::conj(xi)));
  return num / (2.0 * i * (std::conj(z) - xi));
}

}  // namespace

std::complex<double> kernel_from_E(const HermiteBiehlerFunction& E, std::complex<double> z, std::complex<double> xi) {
  if (std::abs(std::conj(z) - xi) >= 1e-8) return e_kernel_raw(E, z, xi);
  // xi sits on the singular line through conj(z): average two shifted points
  constexpr double h = 1e-5;
  return 0.5 * (e_kernel_raw(E, z, xi + h) + e_kernel_raw(E, z, xi - h));
}

KernelConstant measure_kernel_constant(const HermiteBiehlerFunction& E, const JacobiCoefficients& coeffs,
                                       const std::vector<std::pair<std::complex<double>, std::complex<double>>>& points) {
  KernelConstant kc;
  std::vector<std::complex<double>> ratios;
  for (const auto& [z, xi] : points) {
    const auto reference = kernel_finite(coeffs, z, xi, E.horizon());
    if (std::abs(reference) < 1e-12) continue;
    ratios.push_back(kernel_from_E(E, z, xi) / reference);
  }
  kc.samples = ratios.size();
  if (ratios.empty()) return kc;
  for (const auto& r : ratios) kc.mean += r;
  kc.mean /= static_cast<double>(ratios.size());
  for (const auto& r : ratios) kc.spread = std::max(kc.spread, std::abs(r - kc.mean) / std::abs(kc.mean));
  return kc;
}

}  // namespace jbc
