#pragma once

// Domain types shared by all modules.
//
// Index conventions (used throughout the library):
//   a(n)  off-diagonal entry a_n, n >= 0, with a_0 = 1;
//   b(n)  diagonal entry b_n, n >= 1;
//   matrices and vectors are 0-based in code, so entry (i, j) of A^N
//   corresponds to row i+1, column j+1 in the usual 1-based notation.

#include "jbc/dense.hpp"
#include "jbc/errors.hpp"
#include "jbc/precision.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace jbc {

/// Description of a rule-backed coefficient family, as stored in coefficient files.
struct GeneratorSpec {
  std::string kind;                       // "free", "geometric" or "custom"
  std::map<std::string, double> params;   // e.g. {"ratio": 2, "diagonal": 0}
};

/// Off-diagonal {a_n} and diagonal {b_n} of a Jacobi matrix.
///
/// Either finite (explicit vectors) or generator-backed. Generated entries
/// are memoized behind a mutex, so copies share one cache and repeated
/// reads return identical values. Every entry is also available as an exact
/// rational, which is how the Rational and Extended modes read coefficients.
class JacobiCoefficients {
 public:
  /// a = (a_0, a_1, ...), b = (b_1, b_2, ...).
  static JacobiCoefficients finite(std::vector<double> a, std::vector<double> b);
  static JacobiCoefficients finite_exact(std::vector<Rational> a, std::vector<Rational> b);
  /// a_n = 1 (n >= 0), b_n = 0.
  static JacobiCoefficients free();
  /// a_n = ratio^n (so a_0 = 1), b_n = diagonal.
  static JacobiCoefficients geometric(double ratio, double diagonal = 0.0);
  /// Arbitrary rule. a_rule(0) must return 1.
  static JacobiCoefficients generated(std::function<double(std::size_t)> a_rule,
                                      std::function<double(std::size_t)> b_rule,
                                      std::string kind = "custom");

  double a(std::size_t n) const;
  double b(std::size_t n) const;
  Rational a_exact(std::size_t n) const;
  Rational b_exact(std::size_t n) const;

  template <class T>
  T a_as(std::size_t n) const {
    if constexpr (std::is_same_v<T, double>) {
      return a(n);
    } else {
      return from_rational<T>(a_exact(n));
    }
  }
  template <class T>
  T b_as(std::size_t n) const {
    if constexpr (std::is_same_v<T, double>) {
      return b(n);
    } else {
      return from_rational<T>(b_exact(n));
    }
  }

  /// (a_0..a_{n_a-1}) and (b_1..b_{n_b}) in precision T; throws on underrun.
  template <class T>
  std::pair<std::vector<T>, std::vector<T>> materialize(std::size_t n_a, std::size_t n_b) const {
    std::pair<std::vector<T>, std::vector<T>> out;
    out.first.reserve(n_a);
    out.second.reserve(n_b);
    for (std::size_t n = 0; n < n_a; ++n) out.first.push_back(a_as<T>(n));
    for (std::size_t n = 1; n <= n_b; ++n) out.second.push_back(b_as<T>(n));
    return out;
  }

  bool generator_backed() const noexcept;
  /// Number of stored off-diagonal entries (including a_0); nullopt if generated.
  std::optional<std::size_t> a_count() const noexcept;
  /// Number of stored diagonal entries; nullopt if generated.
  std::optional<std::size_t> b_count() const noexcept;
  /// Largest N for which A^N can be materialized; nullopt if unbounded.
  std::optional<std::size_t> max_order() const noexcept;
  const std::optional<GeneratorSpec>& generator() const noexcept;
  /// True when finite entries were supplied as exact rationals.
  bool exact_input() const noexcept;

 private:
  struct Impl;
  explicit JacobiCoefficients(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Builds A^N (0-based storage), symmetric by construction.
template <class T = double>
Matrix<T> materialize_matrix(const JacobiCoefficients& coeffs, std::size_t n) {
  if (n == 0) throw InvalidArgument("materialize_matrix: N must be positive");
  auto [a, b] = coeffs.materialize<T>(n, n);
  Matrix<T> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = b[i];
    if (i + 1 < n) {
      m(i, i + 1) = a[i + 1];
      m(i + 1, i) = a[i + 1];
    }
  }
  return m;
}

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> issues;
  /// Entries inspected: all stored entries, or the first `inspect` generated ones.
  std::size_t inspected = 0;
};

/// Checks a_0 = 1, a_n > 0 and finiteness. Generated coefficients are
/// inspected up to index `inspect`.
ValidationReport validate_coefficients(const JacobiCoefficients& coeffs, std::size_t inspect = 64);

/// Boundary control (f_0, ..., f_{T-1}); the horizon equals its length.
template <class V = std::complex<double>>
class BoundaryControl {
 public:
  explicit BoundaryControl(std::vector<V> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidArgument("boundary control must have positive horizon");
  }
  /// Unit impulse at time slot `at`.
  static BoundaryControl impulse(std::size_t horizon, std::size_t at = 0) {
    if (at >= horizon) throw InvalidArgument("impulse slot outside the horizon");
    std::vector<V> v(horizon, V(0));
    v[at] = V(1);
    return BoundaryControl(std::move(v));
  }
  static BoundaryControl zero(std::size_t horizon) {
    return BoundaryControl(std::vector<V>(horizon, V(0)));
  }

  std::size_t horizon() const noexcept { return values_.size(); }
  const V& operator[](std::size_t t) const { return values_[t]; }
  const std::vector<V>& values() const noexcept { return values_; }

 private:
  std::vector<V> values_;
};

/// Convolution kernel r of the response operator.
template <class T = double>
struct ResponseVector {
  std::vector<T> values;
  std::size_t size() const noexcept { return values.size(); }
  const T& operator[](std::size_t i) const { return values[i]; }
};

/// Power moments s_0, s_1, ... of a measure.
template <class T = double>
struct MomentSequence {
  std::vector<T> values;
  std::size_t size() const noexcept { return values.size(); }
  const T& operator[](std::size_t i) const { return values[i]; }
};

struct SpectralPair {
  double lambda;
  double weight;  // 1 / rho_k
};

/// Eigenvalues of A^N with their spectral weights, ascending in lambda.
class SpectralData {
 public:
  /// Validates: distinct eigenvalues, positive weights.
  explicit SpectralData(std::vector<SpectralPair> pairs);

  std::size_t size() const noexcept { return pairs_.size(); }
  const SpectralPair& operator[](std::size_t k) const { return pairs_[k]; }
  const std::vector<SpectralPair>& pairs() const noexcept { return pairs_; }
  double total_weight() const;

 private:
  std::vector<SpectralPair> pairs_;
};

}  // namespace jbc
