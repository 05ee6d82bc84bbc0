#pragma once

// JSON and CSV encodings for the library types.
//
// Numbers: doubles are JSON numbers (non-finite values become null) and
// CSV fields with 17 significant digits. Extended values are written as
// decimal strings with full precision and Rational values as "p/q" strings,
// so no digits are lost in either mode. Readers accept numbers or strings
// anywhere a real is expected.

#include "jbc/connecting.hpp"
#include "jbc/core.hpp"
#include "jbc/debranges.hpp"
#include "jbc/determinacy.hpp"
#include "jbc/dynamics.hpp"
#include "jbc/inverse.hpp"
#include "jbc/moments.hpp"

#include <json.hpp>

#include <complex>
#include <string>
#include <vector>

namespace jbc::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "jacobi-bc/1";

/// Reads a whole file; "-" means stdin.
std::string read_text(const std::string& path);
json parse_json(const std::string& text);
json read_json(const std::string& path);

/// Exact reading of a JSON number or numeric string.
Rational real_from_json(const json& v);
std::vector<Rational> reals_from_json(const json& arr);

template <class T>
std::vector<T> reals_as(const json& arr) {
  std::vector<T> out;
  for (const auto& q : reals_from_json(arr)) {
    if constexpr (std::is_same_v<T, double>) {
      out.push_back(q.convert_to<double>());
    } else {
      out.push_back(from_rational<T>(q));
    }
  }
  return out;
}

/// "1.5", "1.5+2i", "-0.5-1e-3i", "2i" or "re,im".
std::complex<double> parse_complex(const std::string& text);

std::string format_double(double x);
std::string format_extended(const Extended& x);

template <class T>
json real_to_json(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    if (!std::isfinite(x)) return json(nullptr);
    return json(x == 0.0 ? 0.0 : x);  // no negative zero in output
  } else if constexpr (std::is_same_v<T, Extended>) {
    return json(format_extended(x));
  } else {
    return json(to_exact_string(x));
  }
}

template <class T>
std::string real_to_csv(const T& x) {
  if constexpr (std::is_same_v<T, double>) {
    return format_double(x);
  } else if constexpr (std::is_same_v<T, Extended>) {
    return format_extended(x);
  } else {
    return to_exact_string(x);
  }
}

template <class T>
json reals_to_json(const std::vector<T>& xs) {
  json arr = json::array();
  for (const auto& x : xs) arr.push_back(real_to_json(x));
  return arr;
}

json complex_to_json(std::complex<double> z);

/// {"a": [...], "b": [...], "generator": null | {"kind": ..., "params": {...}}}.
/// Kinds: "free", "geometric" (params ratio, diagonal).
JacobiCoefficients coefficients_from_json(const json& doc);
json coefficients_to_json(const JacobiCoefficients& c, std::size_t a_count, std::size_t b_count);

/// Accepts a bare array or an object holding `key`.
json sequence_field(const json& doc, const std::string& key);

json spectral_data_to_json(const SpectralData& data);

template <class T>
json matrix_to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(real_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
std::string matrix_to_csv(const Matrix<T>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += real_to_csv(m(i, j));
    }
    out += '\n';
  }
  return out;
}

template <class R>
json connecting_to_json(const ConnectingMatrix<R>& c) {
  return {{"orientation", std::string(to_string(c.orientation))}, {"size", c.size()}, {"matrix", matrix_to_json(c.C)}};
}

/// Field as rows n = 1..space_rows, columns t = 0..T.
template <class V>
json wave_field_to_json(const WaveField<V>& u) {
  json rows = json::array();
  for (std::size_t n = 1; n <= u.space_rows(); ++n) {
    json row = json::array();
    for (long t = 0; t <= static_cast<long>(u.horizon()); ++t) row.push_back(real_to_json(u(n, t)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class V>
std::string wave_field_to_csv(const WaveField<V>& u) {
  std::string out = "n";
  for (std::size_t t = 0; t <= u.horizon(); ++t) out += ",t" + std::to_string(t);
  out += '\n';
  for (std::size_t n = 1; n <= u.space_rows(); ++n) {
    out += std::to_string(n);
    for (long t = 0; t <= static_cast<long>(u.horizon()); ++t) out += ',' + real_to_csv(u(n, t));
    out += '\n';
  }
  return out;
}

json eigen_sequence_to_json(const EigenSequence& s);
json report_to_json(const DeterminacyReport& rep);
/// Columns N, lambda_N, beta_N, gamma_N.
std::string report_to_csv(const DeterminacyReport& rep);
json recovery_to_json(const RecoveryResult& rec);

struct GridPoint {
  std::complex<double> at;
  std::complex<double> value;
};

/// Columns re, im, value_re, value_im.
std::string grid_to_csv(const std::vector<GridPoint>& grid);
json grid_to_json(const std::vector<GridPoint>& grid);

}  // namespace jbc::io
