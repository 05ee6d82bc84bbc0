#include "jbc/determinacy.hpp"

#include "jbc/dynamics.hpp"
#include "jbc/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace jbc {

void check_monotone(EigenSequence& seq, Direction dir) {
  seq.monotone = true;
  seq.first_violation.reset();
  for (std::size_t k = 1; k < seq.values.size(); ++k) {
    const double prev = seq.values[k - 1], cur = seq.values[k];
    const double slack = kMonotoneSlack * std::max(1.0, std::abs(prev));
    const bool bad = dir == Direction::NonIncreasing ? cur > prev + slack : cur < prev - slack;
    if (bad || !std::isfinite(cur)) {
      seq.monotone = false;
      seq.first_violation = k + 1;
      return;
    }
  }
}

Matrix<double> monomial_coefficients(const JacobiCoefficients& coeffs, std::size_t N) {
  Matrix<double> P(N, N);
  if (N == 0) return P;
  P(0, 0) = 1.0;
  for (std::size_t n = 1; n < N; ++n) {  // row n holds p_{n+1}
    const double a_n = coeffs.a(n), b_n = coeffs.b(n);
    const double a_prev = n >= 2 ? coeffs.a(n - 1) : 0.0;
    for (std::size_t m = 0; m <= n; ++m) {
      double v = -b_n * P(n - 1, m);
      if (m >= 1) v += P(n - 1, m - 1);
      if (n >= 2) v -= a_prev * P(n - 2, m);
      P(n, m) = v / a_n;
    }
  }
  return P;
}

Matrix<double> chebyshev_coefficients(const JacobiCoefficients& coeffs, std::size_t T) {
  Matrix<double> K(T, T);
  if (T == 0) return K;
  K(0, 0) = 1.0;
  // lambda T_{k+1} = T_{k+2} + T_k with T_0 = 0
  for (std::size_t n = 1; n < T; ++n) {  // column n holds p_{n+1}
    const double a_n = coeffs.a(n), b_n = coeffs.b(n);
    const double a_prev = n >= 2 ? coeffs.a(n - 1) : 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      double v = -b_n * K(k, n - 1);
      if (k >= 1) v += K(k - 1, n - 1);
      if (k + 1 < T) v += K(k + 1, n - 1);
      if (n >= 2) v -= a_prev * K(k, n - 2);
      K(k, n) = v / a_n;
    }
  }
  return K;
}

namespace {

double sigma_max_squared(const Matrix<double>& m) {
  const double s = largest_singular_value(m);
  return s * s;
}

// Tail terms must keep shrinking; otherwise the series is taken to diverge.
void require_decay(const std::vector<double>& terms) {
  for (double t : terms)
    if (!std::isfinite(t)) throw SeriesDivergence("not limit circle: terms overflow");
  const std::size_t K = terms.size();
  if (K < 4) return;
  const std::size_t w = std::min<std::size_t>(5, K / 2);
  double last = 0.0, before = 0.0;
  for (std::size_t i = 0; i < w; ++i) {
    last += terms[K - 1 - i];
    before += terms[K - 1 - w - i];
  }
  if (last > 0.5 * before) throw SeriesDivergence("not limit circle: series terms are not decaying");
}

CircleBound finish_bound(const std::vector<double>& terms) {
  require_decay(terms);
  double total = 0.0;
  for (double t : terms) total += t;
  return {1.0 / total, terms.back() / total, terms.size()};
}

}  // namespace

EigenSequence hankel_min_eig_from_coefficients(const JacobiCoefficients& coeffs, std::size_t N_max) {
  const Matrix<double> P = monomial_coefficients(coeffs, N_max);
  EigenSequence seq;
  for (std::size_t N = 1; N <= N_max; ++N) seq.values.push_back(1.0 / sigma_max_squared(P.leading(N)));
  check_monotone(seq, Direction::NonIncreasing);
  return seq;
}

EigenSequence connecting_min_eig_from_coefficients(const JacobiCoefficients& coeffs, std::size_t T_max) {
  const Matrix<double> K = chebyshev_coefficients(coeffs, T_max);
  EigenSequence seq;
  for (std::size_t T = 1; T <= T_max; ++T) seq.values.push_back(1.0 / sigma_max_squared(K.leading(T)));
  check_monotone(seq, Direction::NonIncreasing);
  return seq;
}

EigenSequence connecting_max_eig_from_coefficients(const JacobiCoefficients& coeffs, std::size_t T_max) {
  const auto w = control_operator<double>(coeffs, T_max);
  EigenSequence seq;
  for (std::size_t T = 1; T <= T_max; ++T) seq.values.push_back(sigma_max_squared(w.W.leading(T)));
  check_monotone(seq, Direction::NonDecreasing);
  return seq;
}

CircleBound circle_bound_hankel(const JacobiCoefficients& coeffs, std::size_t K) {
  if (K == 0) throw InvalidArgument("truncation order must be positive");
  constexpr std::size_t nodes = 2048;
  std::vector<double> terms(K, 0.0);
  for (std::size_t j = 0; j < nodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / nodes;
    const auto p = p_values(coeffs, K, std::polar(1.0, theta));
    for (std::size_t k = 0; k < K; ++k) terms[k] += std::norm(p[k]) / nodes;
  }
  return finish_bound(terms);
}

CircleBound circle_bound_connecting(const JacobiCoefficients& coeffs, std::size_t K) {
  if (K == 0) throw InvalidArgument("truncation order must be positive");
  constexpr std::size_t nodes = 256;
  std::vector<double> terms(K, 0.0);
  for (std::size_t i = 1; i <= nodes; ++i) {
    const double x = std::cos((2.0 * static_cast<double>(i) - 1.0) * std::numbers::pi / (2.0 * nodes));
    const auto p = p_values(coeffs, K, x);
    for (std::size_t k = 0; k < K; ++k) terms[k] += std::numbers::pi / nodes * p[k] * p[k];
  }
  return finish_bound(terms);
}

DeficiencyEstimate deficiency_sums(const JacobiCoefficients& coeffs, std::size_t terms, std::complex<double> z,
                                   double tolerance, std::size_t window) {
  DeficiencyEstimate d;
  d.z = z;
  if (terms == 0) return d;
  const auto p = p_values(coeffs, terms, z);
  const auto q = q_values(coeffs, terms, z);
  double ps = 0.0, qs = 0.0;
  std::size_t run = 0;
  std::vector<double> rel(terms, 1.0);
  for (std::size_t n = 1; n <= terms; ++n) {
    const double pt = std::norm(p[n - 1]), qt = std::norm(q[n - 1]);
    ps += pt;
    qs += qt;
    d.p_sums.push_back(ps);
    d.q_sums.push_back(qs);
    double r = std::max(pt / ps, qs > 0.0 ? qt / qs : 0.0);
    if (!std::isfinite(r) || !std::isfinite(ps) || !std::isfinite(qs)) r = 1.0;
    rel[n - 1] = r;
    run = r < tolerance ? run + 1 : 0;
    if (run >= window && !d.converged_at) d.converged_at = n;
  }
  const std::size_t w = std::min(window, terms);
  d.relative_tail = 0.0;
  for (std::size_t i = terms - w; i < terms; ++i) d.relative_tail = std::max(d.relative_tail, rel[i]);
  d.converged = terms >= window && d.relative_tail < tolerance;
  return d;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::LikelyDeterminate: return "LikelyDeterminate";
    case Verdict::LikelyIndeterminate: return "LikelyIndeterminate";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

DeterminacyReport classify(const JacobiCoefficients& coeffs, std::size_t N_max, const ClassifyOptions& options) {
  if (N_max == 0) throw InvalidArgument("N_max must be positive");
  DeterminacyReport rep;
  rep.n_max = N_max;
  rep.lambda_seq = hankel_min_eig_from_coefficients(coeffs, N_max);
  rep.beta_seq = connecting_min_eig_from_coefficients(coeffs, N_max);
  rep.gamma_seq = connecting_max_eig_from_coefficients(coeffs, N_max);
  try {
    rep.hankel_bound = circle_bound_hankel(coeffs, N_max);
  } catch (const SeriesDivergence&) {
  }
  try {
    rep.connecting_bound = circle_bound_connecting(coeffs, N_max);
  } catch (const SeriesDivergence&) {
  }
  rep.deficiency = deficiency_sums(coeffs, std::max(N_max, options.deficiency_terms), {0.0, 1.0},
                                   options.tail_tolerance);

  const auto& lam = rep.lambda_seq.values;
  const double last = lam.back();
  const bool lambda_stable =
      lam.size() >= 2 && last > options.eps_det &&
      std::abs(last - lam[lam.size() - 2]) <= options.lambda_stability * last;
  const bool lambda_vanishing = last < options.eps_det;
  bool gamma_bounded = false;
  if (options.gamma_bound) {
    gamma_bounded = true;
    for (double g : rep.gamma_seq.values) gamma_bounded = gamma_bounded && g <= *options.gamma_bound;
  }

  std::ostringstream why;
  const bool indeterminate = rep.deficiency.converged && lambda_stable;
  const bool determinate = lambda_vanishing || gamma_bounded;
  if (indeterminate && !determinate) {
    rep.verdict = Verdict::LikelyIndeterminate;
    why << "deficiency sums at z = i converged (relative tail " << rep.deficiency.relative_tail
        << ") and lambda_N stabilized at " << last;
  } else if (determinate && !indeterminate) {
    rep.verdict = Verdict::LikelyDeterminate;
    if (lambda_vanishing) {
      why << "lambda_N fell to " << last << " < " << options.eps_det;
    } else {
      why << "gamma_T stayed below " << *options.gamma_bound;
    }
  } else if (determinate && indeterminate) {
    rep.verdict = Verdict::Inconclusive;
    why << "conflicting evidence between the eigenvalue and deficiency tests";
  } else {
    rep.verdict = Verdict::Inconclusive;
    why << "lambda_N = " << last << " has not vanished";
    if (!rep.deficiency.converged) why << " and the deficiency sums have not converged";
    if (lam.size() < 2) why << " (horizon too short to judge stabilization)";
  }
  rep.rationale = why.str();
  return rep;
}

}  // namespace jbc
