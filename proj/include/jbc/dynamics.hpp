#pragma once

// Forward solvers for the discrete-time boundary-controlled systems
//
//   u_{n,t+1} = a_n u_{n+1,t} + a_{n-1} u_{n-1,t} + b_n u_{n,t} - u_{n,t-1},   n >= 1,
//   u_{n,-1} = u_{n,0} = 0,   u_{0,t} = f_t,
//
// on the half-line (semi-infinite matrix A) and on 1..N with v_{N+1,t} = 0
// (finite block A^N), plus the response vector and control operator.

#include "jbc/core.hpp"

#include <algorithm>
#include <complex>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace jbc {

template <class V>
struct real_scalar {
  using type = V;
};
template <class R>
struct real_scalar<std::complex<R>> {
  using type = R;
};
template <>
struct real_scalar<mp::cpp_complex_50> {
  using type = Extended;
};
template <class V>
using real_scalar_t = typename real_scalar<V>::type;

/// u[n][t] for 0 <= n <= rows()-1 and -1 <= t <= horizon(); row 0 is the control.
template <class V>
class WaveField {
 public:
  WaveField(std::size_t space_rows, std::size_t horizon)
      : rows_(space_rows + 1), horizon_(horizon), data_(rows_ * (horizon + 2), V(0)) {}

  /// Number of spatial rows excluding the boundary row.
  std::size_t space_rows() const noexcept { return rows_ - 1; }
  std::size_t horizon() const noexcept { return horizon_; }

  const V& operator()(std::size_t n, long t) const { return data_[index(n, t)]; }
  V& operator()(std::size_t n, long t) { return data_[index(n, t)]; }

  /// State (u_{1,t}, ..., u_{rows,t}).
  std::vector<V> state(long t) const {
    std::vector<V> s;
    s.reserve(space_rows());
    for (std::size_t n = 1; n < rows_; ++n) s.push_back((*this)(n, t));
    return s;
  }

 private:
  std::size_t index(std::size_t n, long t) const {
    if (n >= rows_ || t < -1 || t > static_cast<long>(horizon_))
      throw InvalidArgument("wave field index out of range");
    return n * (horizon_ + 2) + static_cast<std::size_t>(t + 1);
  }

  std::size_t rows_;
  std::size_t horizon_;
  std::vector<V> data_;
};

namespace detail {

// Lazily fetched coefficients in precision R.
template <class R>
class CoefficientCursor {
 public:
  explicit CoefficientCursor(const JacobiCoefficients& c) : c_(c) {}
  const R& a(std::size_t n) {
    while (a_.size() <= n) a_.push_back(c_.a_as<R>(a_.size()));
    return a_[n];
  }
  const R& b(std::size_t n) {
    while (b_.size() < n) b_.push_back(c_.b_as<R>(b_.size() + 1));
    return b_[n - 1];
  }

 private:
  const JacobiCoefficients& c_;
  std::vector<R> a_, b_;
};

template <class V>
V control_at(const BoundaryControl<V>& f, long t) {
  return (t >= 0 && static_cast<std::size_t>(t) < f.horizon()) ? f[static_cast<std::size_t>(t)] : V(0);
}

}  // namespace detail

/// Semi-infinite system up to time T. Control values past its horizon are zero.
/// Rows n > t vanish (finite propagation speed), so rows 1..T are stored.
/// Needs a_0..a_{T-1} and b_1..b_{T-1}.
template <class V, class R = real_scalar_t<V>>
WaveField<V> solve_semi_infinite(const JacobiCoefficients& coeffs, const BoundaryControl<V>& control,
                                 std::size_t T) {
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  detail::CoefficientCursor<R> c(coeffs);
  WaveField<V> u(T, T);
  for (long t = 0; t <= static_cast<long>(T); ++t) u(0, t) = detail::control_at(control, t);
  for (long t = 0; t < static_cast<long>(T); ++t) {
    const std::size_t top = static_cast<std::size_t>(t) + 1;
    for (std::size_t n = 1; n <= top; ++n) {
      V next = V(c.a(n - 1)) * u(n - 1, t) - u(n, t - 1);
      if (n <= static_cast<std::size_t>(t)) next += V(c.b(n)) * u(n, t);
      if (n + 1 <= static_cast<std::size_t>(t)) next += V(c.a(n)) * u(n + 1, t);
      u(n, t + 1) = next;
    }
  }
  return u;
}

/// System on 1..N with Dirichlet condition v_{N+1,t} = 0. Needs a_0..a_{N-1}, b_1..b_N.
template <class V, class R = real_scalar_t<V>>
WaveField<V> solve_finite(const JacobiCoefficients& coeffs, std::size_t N, const BoundaryControl<V>& control,
                          std::size_t T) {
  if (N == 0) throw InvalidArgument("system size N must be at least 1");
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  auto [a, b] = coeffs.materialize<R>(N, N);
  WaveField<V> v(N + 1, T);  // row N+1 stays zero
  for (long t = 0; t <= static_cast<long>(T); ++t) v(0, t) = detail::control_at(control, t);
  for (long t = 0; t < static_cast<long>(T); ++t) {
    for (std::size_t n = 1; n <= N; ++n) {
      // same summation order as solve_semi_infinite, so both agree bit for bit
      V next = V(a[n - 1]) * v(n - 1, t) - v(n, t - 1);
      next += V(b[n - 1]) * v(n, t);
      if (n < N) next += V(a[n]) * v(n + 1, t);
      v(n, t + 1) = next;
    }
  }
  return v;
}

/// Batch of independent simulations; each result lands in its own slot, so
/// the output does not depend on the thread count.
template <class V, class R = real_scalar_t<V>>
std::vector<WaveField<V>> solve_semi_infinite_batch(const JacobiCoefficients& coeffs,
                                                    const std::vector<BoundaryControl<V>>& controls,
                                                    std::size_t T, unsigned threads = 1) {
  std::vector<std::optional<WaveField<V>>> slots(controls.size());
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(controls.size())));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < controls.size(); i += workers)
        slots[i].emplace(solve_semi_infinite<V, R>(coeffs, controls[i], T));
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<WaveField<V>> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// r_{t-1} = u^delta_{1,t}, t = 1..L, for the impulse control delta = (1, 0, 0, ...).
///
/// Only the part of the light cone that still reaches row 1 by time L is
/// evaluated, so L = 2N needs exactly the entries of A^N.
template <class R = double>
ResponseVector<R> response_vector(const JacobiCoefficients& coeffs, std::size_t L) {
  if (L == 0) throw InvalidArgument("response length must be at least 1");
  detail::CoefficientCursor<R> c(coeffs);
  // rows 0..L+1, three time layers
  std::vector<R> prev(L + 2, R(0)), cur(L + 2, R(0)), next(L + 2, R(0));
  ResponseVector<R> r;
  r.values.reserve(L);
  for (std::size_t t = 0; t < L; ++t) {
    const R g = t == 0 ? R(1) : R(0);
    const std::size_t top = std::min(t + 1, L - t);
    std::fill(next.begin(), next.end(), R(0));
    for (std::size_t n = 1; n <= top; ++n) {
      R val = -prev[n];
      const R& left = n == 1 ? g : cur[n - 1];
      if (left != R(0)) val += c.a(n - 1) * left;
      if (n <= t && cur[n] != R(0)) val += c.b(n) * cur[n];
      if (n + 1 <= t && cur[n + 1] != R(0)) val += c.a(n) * cur[n + 1];
      next[n] = val;
    }
    r.values.push_back(next[1]);
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return r;
}

/// (R f)_t = sum_{s=0}^{t-1} r_s f_{t-1-s}, t = 1..T: the boundary output u^f_{1,t}.
template <class V, class R>
std::vector<V> apply_response(const ResponseVector<R>& r, const BoundaryControl<V>& f, std::size_t T) {
  if (r.size() < T) throw InvalidArgument("response vector shorter than the horizon");
  std::vector<V> out(T, V(0));
  for (std::size_t t = 1; t <= T; ++t)
    for (std::size_t s = 0; s < t; ++s) out[t - 1] += V(r[s]) * detail::control_at(f, static_cast<long>(t - 1 - s));
  return out;
}

/// W_T, with W^T = W_T J_T. Column k is the state at time k+1 produced by a
/// unit impulse at time 0; upper triangular with W(k,k) = a_0 a_1 ... a_k.
template <class R = double>
struct ControlOperatorMatrix {
  Matrix<R> W;
  std::size_t horizon() const noexcept { return W.rows(); }
};

template <class R = double>
ControlOperatorMatrix<R> control_operator(const JacobiCoefficients& coeffs, std::size_t T) {
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  const auto field = solve_semi_infinite<R, R>(coeffs, BoundaryControl<R>::impulse(T), T);
  ControlOperatorMatrix<R> out{Matrix<R>(T, T)};
  for (std::size_t k = 0; k < T; ++k)
    for (std::size_t n = 1; n <= k + 1; ++n) out.W(n - 1, k) = field(n, static_cast<long>(k + 1));
  return out;
}

/// W^T f = (u^f_{1,T}, ..., u^f_{T,T}) computed as W_T (J_T f).
template <class R, class V>
std::vector<V> apply_control_operator(const ControlOperatorMatrix<R>& w, const BoundaryControl<V>& f) {
  const std::size_t T = w.horizon();
  if (f.horizon() != T) throw InvalidArgument("control horizon does not match the control operator");
  std::vector<V> reversed(f.values().rbegin(), f.values().rend());
  return w.W * reversed;
}

}  // namespace jbc
