#pragma once

// Connecting operators. Two orientations exist and are never inferred:
//
//   CornerBottom  C^T, sums run toward the lower-right corner,
//                 {C^T}_{ij} = sum_{k=0}^{T-max(i,j)} r_{|i-j|+2k}   (1-based);
//   CornerTop     C_T = J C^T J = W_T^* W_T = Lambda_T S_T Lambda_T^*,
//                 {C_T}_{ij} = sum_{k=0}^{min(i,j)-1} r_{|i-j|+2k}.

#include "jbc/core.hpp"
#include "jbc/dynamics.hpp"
#include "jbc/moments.hpp"
#include "jbc/spectral.hpp"

#include <string_view>

namespace jbc {

enum class Orientation { CornerTop, CornerBottom };

std::string_view to_string(Orientation o);
Orientation parse_orientation(std::string_view text);

template <class R = double>
struct ConnectingMatrix {
  Matrix<R> C;
  Orientation orientation;

  std::size_t size() const noexcept { return C.rows(); }

  ConnectingMatrix flipped() const {
    return {exchange_flip(C),
            orientation == Orientation::CornerTop ? Orientation::CornerBottom : Orientation::CornerTop};
  }
  ConnectingMatrix oriented(Orientation o) const { return o == orientation ? *this : flipped(); }
};

template <class R>
ConnectingMatrix<R> connecting_from_response(const ResponseVector<R>& r, std::size_t T) {
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  if (r.size() < 2 * T - 1)
    throw InvalidArgument("insufficient response data: need " + std::to_string(2 * T - 1) + " entries, have " +
                          std::to_string(r.size()));
  ConnectingMatrix<R> out{Matrix<R>(T, T), Orientation::CornerBottom};
  for (std::size_t i = 1; i <= T; ++i)
    for (std::size_t j = i; j <= T; ++j) {
      R acc = R(0);
      for (std::size_t k = 0; k <= T - j; ++k) acc += r[j - i + 2 * k];
      out.C(i - 1, j - 1) = acc;
      out.C(j - 1, i - 1) = acc;
    }
  return out;
}

/// {C^T}_{l+1,m+1} = int T_{T-l} T_{T-m} d rho_N; requires T <= N.
ConnectingMatrix<double> connecting_from_spectrum(const SpectralData& data, std::size_t T);

/// C_T = W_T^* W_T from the simulated control operator.
template <class R = double>
ConnectingMatrix<R> gram_from_control(const JacobiCoefficients& coeffs, std::size_t T) {
  const auto w = control_operator<R>(coeffs, T);
  return {w.W.transpose() * w.W, Orientation::CornerTop};
}

/// C_T = Lambda_T S_T Lambda_T^*.
template <class R>
ConnectingMatrix<R> connecting_from_hankel(const HankelMatrix<R>& h) {
  const Matrix<R> L = build_lambda(h.size()).template as<R>();
  return {L * h.S * L.transpose(), Orientation::CornerTop};
}

struct ResponseValidation {
  bool valid = false;
  /// min eig(C^N); the certificate for the verdict.
  double min_eigenvalue = 0.0;
  /// First failing pivot of the factorization, when invalid.
  std::optional<std::size_t> failed_pivot;
};

/// r is a response vector of some Jacobi matrix iff C^N is positive definite.
/// The verdict comes from the factorization (exact in Rational).
template <class R>
ResponseValidation validate_response(const ResponseVector<R>& r, std::size_t N) {
  const auto c = connecting_from_response(r, N);
  ResponseValidation v;
  if constexpr (is_exact_v<R>) {
    const auto f = ldlt(c.C);
    v.valid = f.ok();
    if (!f.ok()) v.failed_pivot = f.failed_at;
  } else {
    const auto f = cholesky_upper(c.C);
    v.valid = f.ok();
    if (!f.ok()) v.failed_pivot = f.failed_at;
  }
  v.min_eigenvalue = eigenvalues_of(c.C).front();
  return v;
}

}  // namespace jbc
