#pragma once

// Scalar types for the three arithmetic modes and exact conversions between them.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <limits>
#include <string>
#include <string_view>
#include <type_traits>

namespace jbc {

namespace mp = boost::multiprecision;

/// 50 decimal digits of binary floating point.
using Extended = mp::cpp_bin_float_50;
using Rational = mp::number<mp::cpp_rational_backend, mp::et_off>;
using BigInt = mp::cpp_int;

enum class PrecisionMode { Double, Extended, Rational };

std::string_view to_string(PrecisionMode mode);
/// Accepts "double", "extended", "rational" (case-insensitive).
PrecisionMode parse_precision(std::string_view text);

template <class T>
inline constexpr bool is_supported_scalar_v =
    std::is_same_v<T, double> || std::is_same_v<T, Extended> || std::is_same_v<T, Rational>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class T>
constexpr PrecisionMode precision_of() {
  static_assert(is_supported_scalar_v<T>);
  if constexpr (std::is_same_v<T, double>) {
    return PrecisionMode::Double;
  } else if constexpr (std::is_same_v<T, Extended>) {
    return PrecisionMode::Extended;
  } else {
    return PrecisionMode::Rational;
  }
}

template <class T>
struct complex_of {
  using type = std::complex<T>;
};
template <>
struct complex_of<Extended> {
  using type = mp::cpp_complex_50;
};
template <class T>
using Complex = typename complex_of<T>::type;

/// Machine epsilon of the mode; zero for exact arithmetic.
template <class T>
T epsilon_of() {
  if constexpr (is_exact_v<T>) {
    return T(0);
  } else {
    return std::numeric_limits<T>::epsilon();
  }
}

/// Exact: every finite double is a dyadic rational.
Rational rational_from_double(double x);

/// Exact: Extended values are binary fractions too.
Rational rational_from_extended(const Extended& x);

/// Parses "p/q", integers and decimal literals ("0.1", "-2.5e-3") exactly.
Rational parse_rational(std::string_view text);

/// "p/q" or "p" when the denominator is one.
std::string to_exact_string(const Rational& q);

template <class T>
T from_double(double x) {
  if constexpr (is_exact_v<T>) {
    return rational_from_double(x);
  } else {
    return T(x);
  }
}

template <class T>
T from_rational(const Rational& q) {
  if constexpr (is_exact_v<T>) {
    return q;
  } else if constexpr (std::is_same_v<T, double>) {
    return q.convert_to<double>();
  } else {
    return T(mp::numerator(q)) / T(mp::denominator(q));
  }
}

template <class T>
double to_double(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

template <class T>
Extended to_extended(const T& x) {
  if constexpr (std::is_same_v<T, Extended>) {
    return x;
  } else if constexpr (is_exact_v<T>) {
    return from_rational<Extended>(x);
  } else {
    return Extended(x);
  }
}

template <class T>
Complex<T> make_complex(const T& re, const T& im) {
  return Complex<T>(re, im);
}

template <class T>
Complex<T> to_complex(std::complex<double> z) {
  return Complex<T>(T(z.real()), T(z.imag()));
}

template <class C>
std::complex<double> to_std_complex(const C& z) {
  if constexpr (std::is_same_v<C, std::complex<double>>) {
    return z;
  } else {
    return {real(z).template convert_to<double>(), imag(z).template convert_to<double>()};
  }
}

}  // namespace jbc
