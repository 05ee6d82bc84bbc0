#pragma once

// Finite-section diagnostics for the limit point / limit circle question:
// extreme eigenvalues of Hankel and connecting matrices, the integral lower
// bounds valid in the limit circle case, and a heuristic verdict.

#include "jbc/connecting.hpp"
#include "jbc/core.hpp"
#include "jbc/moments.hpp"

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jbc {

/// values[k] belongs to section size k+1.
struct EigenSequence {
  std::vector<double> values;
  /// Expected direction held within slack (non-increasing for minima,
  /// non-decreasing for maxima).
  bool monotone = true;
  /// First section size (1-based) that broke the expected direction.
  std::optional<std::size_t> first_violation;
  std::vector<std::size_t> conditioning_warnings;
};

/// Slack for monotonicity checks: 1e-12 relative to max(1, |previous|).
inline constexpr double kMonotoneSlack = 1e-12;

enum class Direction { NonIncreasing, NonDecreasing };

void check_monotone(EigenSequence& seq, Direction dir);

/// lambda_N = min eig(S_N), N = 1..N_max.
template <class T>
EigenSequence hankel_min_eig_sequence(const MomentSequence<T>& s, std::size_t N_max) {
  const auto rep = hankel_positivity(s, N_max);
  EigenSequence seq{rep.min_eigenvalues};
  seq.conditioning_warnings = rep.conditioning_warnings;
  check_monotone(seq, Direction::NonIncreasing);
  return seq;
}

namespace detail {

template <class R>
EigenSequence connecting_extreme_sequence(const ResponseVector<R>& r, std::size_t T_max, bool smallest) {
  // C_T (top orientation) sections are nested, so one matrix serves all T.
  const auto c = connecting_from_response(r, T_max).oriented(Orientation::CornerTop);
  EigenSequence seq;
  for (std::size_t T = 1; T <= T_max; ++T) {
    const auto ev = eigenvalues_of(c.C.leading(T));
    seq.values.push_back(smallest ? ev.front() : ev.back());
  }
  check_monotone(seq, smallest ? Direction::NonIncreasing : Direction::NonDecreasing);
  return seq;
}

}  // namespace detail

/// beta_T = min eig(C_T), T = 1..T_max.
template <class R>
EigenSequence connecting_min_eig_sequence(const ResponseVector<R>& r, std::size_t T_max) {
  return detail::connecting_extreme_sequence(r, T_max, true);
}

/// gamma_T = max eig(C_T), T = 1..T_max.
template <class R>
EigenSequence connecting_max_eig_sequence(const ResponseVector<R>& r, std::size_t T_max) {
  return detail::connecting_extreme_sequence(r, T_max, false);
}

// Coefficient routes. When the coefficients are known the extreme
// eigenvalues follow from inverse factors that stay well scaled even when
// S_N and C_T are numerically singular:
//   S_N^{-1} = P^T P,  P rows = monomial coefficients of p_1..p_N;
//   C_T^{-1} = K K^T,  K = W_T^{-1}, columns = coefficients of p_n in T_1..T_T.

/// lambda_N = 1 / sigma_max(P_N)^2.
EigenSequence hankel_min_eig_from_coefficients(const JacobiCoefficients& coeffs, std::size_t N_max);
/// beta_T = 1 / sigma_max(K_T)^2.
EigenSequence connecting_min_eig_from_coefficients(const JacobiCoefficients& coeffs, std::size_t T_max);
/// gamma_T = sigma_max(W_T)^2.
EigenSequence connecting_max_eig_from_coefficients(const JacobiCoefficients& coeffs, std::size_t T_max);

/// Monomial coefficients of p_1..p_N (row n-1 holds p_n), lower triangular.
Matrix<double> monomial_coefficients(const JacobiCoefficients& coeffs, std::size_t N);
/// Coefficients of p_1..p_T in the basis T_1..T_T (column n-1 holds p_n), upper triangular.
Matrix<double> chebyshev_coefficients(const JacobiCoefficients& coeffs, std::size_t T);

struct CircleBound {
  double value = 0.0;
  /// Contribution of the last retained term relative to the whole integral.
  double tail = 0.0;
  std::size_t terms = 0;
};

/// (int_0^{2pi} sum_{k<=K} |p_k(e^{i theta})|^2 d theta / 2pi)^{-1}, 2048-point trapezoid.
/// Throws SeriesDivergence when the terms stop decaying.
CircleBound circle_bound_hankel(const JacobiCoefficients& coeffs, std::size_t K);

/// (int_{-1}^{1} sum_{k<=K} p_k(x)^2 dx / sqrt(1 - x^2))^{-1}, 256-node Gauss-Chebyshev.
CircleBound circle_bound_connecting(const JacobiCoefficients& coeffs, std::size_t K);

struct DeficiencyEstimate {
  std::complex<double> z{0.0, 1.0};
  /// Partial sums of |p_n(z)|^2 and |q_n(z)|^2, n = 1..terms.
  std::vector<double> p_sums, q_sums;
  bool converged = false;
  /// First n at which both relative tails stayed below tolerance for the whole window.
  std::optional<std::size_t> converged_at;
  /// Largest term / partial sum over the final window.
  double relative_tail = 0.0;
};

DeficiencyEstimate deficiency_sums(const JacobiCoefficients& coeffs, std::size_t terms,
                                   std::complex<double> z = {0.0, 1.0}, double tolerance = 1e-10,
                                   std::size_t window = 5);

enum class Verdict { LikelyDeterminate, LikelyIndeterminate, Inconclusive };

std::string_view to_string(Verdict v);

struct ClassifyOptions {
  double eps_det = 1e-8;
  double tail_tolerance = 1e-10;
  /// Relative change of lambda_N between the last two sections counted as stable.
  double lambda_stability = 1e-3;
  /// Deficiency sums use max(N_max, this) terms.
  std::size_t deficiency_terms = 64;
  /// When set, gamma_T <= bound for all T counts as evidence of the limit point case.
  std::optional<double> gamma_bound;
};

struct DeterminacyReport {
  std::size_t n_max = 0;
  EigenSequence lambda_seq, beta_seq, gamma_seq;
  std::optional<CircleBound> hankel_bound, connecting_bound;
  DeficiencyEstimate deficiency;
  Verdict verdict = Verdict::Inconclusive;
  std::string rationale;
};

/// Assembles the sequences and bounds; the verdict is heuristic.
DeterminacyReport classify(const JacobiCoefficients& coeffs, std::size_t N_max, const ClassifyOptions& options = {});

}  // namespace jbc
