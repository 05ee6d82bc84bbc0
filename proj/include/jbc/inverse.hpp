#pragma once

// Recovery of (a_k, b_k) from a response vector or from moments.
//
// C_T = W_T^* W_T with W_T upper triangular and positive on the diagonal, so
// the Cholesky factor of C_T is W_T itself. Its diagonal and first
// superdiagonal carry the coefficients:
//
//   W(k,k)   = a_0 a_1 ... a_k,
//   W(k-1,k) = W(k-1,k-1) (b_1 + ... + b_k).
//
// The Hankel factor S_T = R^T R gives R Lambda^T = W, which has the same
// diagonal and superdiagonal as R, so the same extraction applies.

#include "jbc/connecting.hpp"
#include "jbc/core.hpp"
#include "jbc/dynamics.hpp"
#include "jbc/moments.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace jbc {

enum class RecoveryPath { BoundaryControl, Hankel };

std::string_view to_string(RecoveryPath p);

struct RecoveryResult {
  /// a_0..a_{T-1} and b_1..b_{T-1}; b_T is not determined by data of horizon T.
  JacobiCoefficients coeffs;
  std::size_t horizon = 0;
  /// max |r_t - r_hat_t| / max(1, |r_t|) over the response entries the
  /// recovered coefficients determine.
  double residual = 0.0;
  RecoveryPath path = RecoveryPath::BoundaryControl;
  PrecisionMode precision = PrecisionMode::Double;
  /// Smallest pivot / diagonal ratio met in the factorization.
  double min_pivot_ratio = 1.0;
  /// For moment input: max coefficient difference between the two routes.
  std::optional<double> path_discrepancy;

  std::vector<double> a() const;  // a_1..a_{T-1}
  std::vector<double> b() const;  // b_1..b_{T-1}
};

/// Refuse factorizations whose pivots lost more than ~10 digits relative to
/// double precision; the limit scales with the working precision.
template <class R>
double pivot_ratio_limit() {
  if constexpr (is_exact_v<R>) {
    return 0.0;
  } else {
    return 1e-10 * to_double(epsilon_of<R>()) / std::numeric_limits<double>::epsilon();
  }
}

namespace detail {

struct ExtractedCoefficients {
  JacobiCoefficients coeffs;
  double min_pivot_ratio;
};

template <class R>
ExtractedCoefficients coefficients_from_gram(const Matrix<R>& m, const std::string& not_pd_message) {
  const std::size_t T = m.rows();
  std::vector<R> sums(T, R(0));  // b_1 + ... + b_k, k < T
  double min_ratio = 1.0;
  std::size_t min_index = 0;

  if constexpr (is_exact_v<R>) {
    const auto f = ldlt(m);
    if (!f.ok()) throw NotPositiveDefinite(not_pd_message, f.failed_at);
    std::vector<Rational> a{Rational(1)}, b;
    for (std::size_t k = 0; k < T; ++k) {
      const double ratio = to_double(Rational(f.pivots[k] / m(k, k)));
      if (ratio < min_ratio) min_ratio = ratio;
    }
    for (std::size_t k = 1; k < T; ++k) {
      const Extended a_k = sqrt(from_rational<Extended>(f.pivots[k] / f.pivots[k - 1]));
      a.push_back(rational_from_extended(a_k));
      sums[k] = f.unit_upper(k - 1, k);
      b.push_back(sums[k] - sums[k - 1]);
    }
    return {JacobiCoefficients::finite_exact(std::move(a), std::move(b)), min_ratio};
  } else {
    const auto f = cholesky_upper(m);
    if (!f.ok()) throw NotPositiveDefinite(not_pd_message, f.failed_at);
    min_ratio = f.min_pivot_ratio;
    min_index = f.min_pivot_index;
    if (min_ratio < pivot_ratio_limit<R>())
      throw ConditioningError("factorization lost too many digits (pivot ratio " + std::to_string(min_ratio) +
                                  "); use extended precision",
                              min_index);
    const auto& u = f.upper;
    std::vector<R> a{R(1)}, b;
    for (std::size_t k = 1; k < T; ++k) {
      a.push_back(u(k, k) / u(k - 1, k - 1));
      sums[k] = u(k - 1, k) / u(k - 1, k - 1);
      b.push_back(sums[k] - sums[k - 1]);
    }
    if constexpr (std::is_same_v<R, double>) {
      return {JacobiCoefficients::finite(std::move(a), std::move(b)), min_ratio};
    } else {
      std::vector<Rational> aq, bq;
      for (const auto& x : a) aq.push_back(rational_from_extended(x));
      for (const auto& x : b) bq.push_back(rational_from_extended(x));
      return {JacobiCoefficients::finite_exact(std::move(aq), std::move(bq)), min_ratio};
    }
  }
}

template <class R>
double response_residual(const JacobiCoefficients& recovered, const ResponseVector<R>& r, std::size_t T) {
  using W = std::conditional_t<std::is_same_v<R, double>, double, Extended>;
  const std::size_t L = std::max<std::size_t>(1, 2 * T - 2);
  const auto r_hat = response_vector<W>(recovered, L);
  double worst = 0.0;
  for (std::size_t t = 0; t < L; ++t) {
    W target;
    if constexpr (std::is_same_v<W, double>) {
      target = r[t];
    } else {
      target = to_extended(r[t]);
    }
    const W diff = r_hat[t] - target;
    worst = std::max(worst, std::abs(to_double(diff)) / std::max(1.0, std::abs(to_double(target))));
  }
  return worst;
}

}  // namespace detail

/// Factor C_T (Cholesky, or LDL^T in Rational) and read off the coefficients.
template <class R>
RecoveryResult recover_from_response(const ResponseVector<R>& r, std::size_t T) {
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  if (r.size() < 2 * T - 1)
    throw InvalidArgument("insufficient response data: need " + std::to_string(2 * T - 1) + " entries");
  const auto c = connecting_from_response(r, T).oriented(Orientation::CornerTop);
  auto ex = detail::coefficients_from_gram(c.C, "not a response vector");
  RecoveryResult out{.coeffs = ex.coeffs,
                     .horizon = T,
                     .path = RecoveryPath::BoundaryControl,
                     .precision = precision_of<R>(),
                     .min_pivot_ratio = ex.min_pivot_ratio,
                     .path_discrepancy = std::nullopt};
  out.residual = detail::response_residual(out.coeffs, r, T);
  return out;
}

double coefficient_discrepancy(const JacobiCoefficients& x, const JacobiCoefficients& y, std::size_t T);

/// Hankel route, cross-checked against the response route.
template <class R>
RecoveryResult recover_from_moments(const MomentSequence<R>& s, std::size_t T) {
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  if (s.size() < 2 * T - 1)
    throw InvalidArgument("insufficient moments: need " + std::to_string(2 * T - 1) + " entries");
  const auto h = build_hankel(s, T);
  auto ex = detail::coefficients_from_gram(h.S, "not a moment sequence of a positive measure");

  MomentSequence<R> head{std::vector<R>(s.values.begin(), s.values.begin() + static_cast<long>(2 * T - 1))};
  const auto r = moments_to_response(head);

  RecoveryResult out{.coeffs = ex.coeffs,
                     .horizon = T,
                     .path = RecoveryPath::Hankel,
                     .precision = precision_of<R>(),
                     .min_pivot_ratio = ex.min_pivot_ratio,
                     .path_discrepancy = std::nullopt};
  out.residual = detail::response_residual(out.coeffs, r, T);
  try {
    const auto other = recover_from_response(r, T);
    out.path_discrepancy = coefficient_discrepancy(out.coeffs, other.coeffs, T);
  } catch (const ConditioningError&) {
    // cross-check unavailable at this precision
  }
  return out;
}

}  // namespace jbc
