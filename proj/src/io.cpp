#include "jbc/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

namespace jbc::io {

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json(const std::string& path) { return parse_json(read_text(path)); }

Rational real_from_json(const json& v) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError("non-finite number");
    return rational_from_double(x);
  }
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw ParseError("expected a number or numeric string, got " + std::string(v.type_name()));
}

std::vector<Rational> reals_from_json(const json& arr) {
  if (!arr.is_array()) throw ParseError("expected an array of numbers");
  std::vector<Rational> out;
  out.reserve(arr.size());
  for (const auto& v : arr) out.push_back(real_from_json(v));
  return out;
}

std::complex<double> parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty complex literal");
  auto number = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ParseError("bad complex literal '" + text + "'");
    }
    if (used != part.size()) throw ParseError("bad complex literal '" + text + "'");
    return v;
  };
  if (auto comma = s.find(','); comma != std::string::npos)
    return {number(s.substr(0, comma)), number(s.substr(comma + 1))};
  if (s.back() != 'i' && s.back() != 'j') return {number(s), 0.0};
  s.pop_back();
  // split at the last sign that is not part of an exponent
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string::npos) return {0.0, number(s)};
  return {number(s.substr(0, split)), number(s.substr(split))};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string format_extended(const Extended& x) {
  return x.str(std::numeric_limits<Extended>::digits10, std::ios_base::scientific);
}

json complex_to_json(std::complex<double> z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

JacobiCoefficients coefficients_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("coefficient file must be a JSON object");
  if (doc.contains("generator") && !doc["generator"].is_null()) {
    const auto& g = doc["generator"];
    const std::string kind = g.value("kind", "");
    const json params = g.value("params", json::object());
    if (kind == "free") return JacobiCoefficients::free();
    if (kind == "geometric")
      return JacobiCoefficients::geometric(params.value("ratio", 2.0), params.value("diagonal", 0.0));
    throw ParseError("unknown generator kind '" + kind + "'");
  }
  if (!doc.contains("a") || !doc.contains("b")) throw ParseError("coefficient file needs 'a' and 'b' arrays");
  bool exact = false;
  for (const auto* key : {"a", "b"})
    for (const auto& v : doc[key]) exact = exact || v.is_string();
  if (exact) return JacobiCoefficients::finite_exact(reals_from_json(doc["a"]), reals_from_json(doc["b"]));
  return JacobiCoefficients::finite(reals_as<double>(doc["a"]), reals_as<double>(doc["b"]));
}

json coefficients_to_json(const JacobiCoefficients& c, std::size_t a_count, std::size_t b_count) {
  json doc = {{"schema", kSchema}};
  if (const auto& g = c.generator()) {
    json params = json::object();
    for (const auto& [k, v] : g->params) params[k] = v;
    doc["generator"] = {{"kind", g->kind}, {"params", params}};
    return doc;
  }
  json a = json::array(), b = json::array();
  for (std::size_t n = 0; n < a_count; ++n)
    a.push_back(c.exact_input() ? real_to_json(c.a_exact(n)) : real_to_json(c.a(n)));
  for (std::size_t n = 1; n <= b_count; ++n)
    b.push_back(c.exact_input() ? real_to_json(c.b_exact(n)) : real_to_json(c.b(n)));
  doc["a"] = a;
  doc["b"] = b;
  doc["generator"] = nullptr;
  return doc;
}

json sequence_field(const json& doc, const std::string& key) {
  if (doc.is_array()) return doc;
  if (doc.is_object() && doc.contains(key)) return doc[key];
  throw ParseError("expected an array or an object with '" + key + "'");
}

json spectral_data_to_json(const SpectralData& data) {
  json arr = json::array();
  for (const auto& [lambda, weight] : data.pairs())
    arr.push_back({{"lambda", real_to_json(lambda)}, {"weight", real_to_json(weight)}});
  return arr;
}

json eigen_sequence_to_json(const EigenSequence& s) {
  json doc = {{"values", reals_to_json(s.values)}, {"monotone", s.monotone}};
  doc["first_violation"] = s.first_violation ? json(*s.first_violation) : json(nullptr);
  doc["conditioning_warnings"] = s.conditioning_warnings;
  return doc;
}

namespace {

json bound_json(const std::optional<CircleBound>& b) {
  if (!b) return {{"diverged", true}};
  return {{"diverged", false}, {"value", real_to_json(b->value)}, {"tail", real_to_json(b->tail)}, {"terms", b->terms}};
}

}  // namespace

json report_to_json(const DeterminacyReport& rep) {
  json doc = {{"schema", kSchema}, {"n_max", rep.n_max}};
  doc["lambda_seq"] = eigen_sequence_to_json(rep.lambda_seq);
  doc["beta_seq"] = eigen_sequence_to_json(rep.beta_seq);
  doc["gamma_seq"] = eigen_sequence_to_json(rep.gamma_seq);
  doc["hankel_bound"] = bound_json(rep.hankel_bound);
  doc["connecting_bound"] = bound_json(rep.connecting_bound);
  const auto& d = rep.deficiency;
  doc["deficiency"] = {{"z", complex_to_json(d.z)},
                       {"p_sums", reals_to_json(d.p_sums)},
                       {"q_sums", reals_to_json(d.q_sums)},
                       {"converged", d.converged},
                       {"converged_at", d.converged_at ? json(*d.converged_at) : json(nullptr)},
                       {"relative_tail", real_to_json(d.relative_tail)}};
  doc["verdict"] = std::string(to_string(rep.verdict));
  doc["rationale"] = rep.rationale;
  return doc;
}

std::string report_to_csv(const DeterminacyReport& rep) {
  std::string out = "N,lambda_N,beta_N,gamma_N\n";
  for (std::size_t k = 0; k < rep.lambda_seq.values.size(); ++k)
    out += std::to_string(k + 1) + ',' + format_double(rep.lambda_seq.values[k]) + ',' +
           format_double(rep.beta_seq.values[k]) + ',' + format_double(rep.gamma_seq.values[k]) + '\n';
  return out;
}

json recovery_to_json(const RecoveryResult& rec) {
  json a = json::array(), b = json::array();
  for (std::size_t k = 1; k < rec.horizon; ++k) {
    switch (rec.precision) {
      case PrecisionMode::Double:
        a.push_back(real_to_json(rec.coeffs.a(k)));
        b.push_back(real_to_json(rec.coeffs.b(k)));
        break;
      case PrecisionMode::Extended:
        a.push_back(real_to_json(from_rational<Extended>(rec.coeffs.a_exact(k))));
        b.push_back(real_to_json(from_rational<Extended>(rec.coeffs.b_exact(k))));
        break;
      case PrecisionMode::Rational:
        // a_k is a square root and generally irrational; b_k is exact
        a.push_back(real_to_json(from_rational<Extended>(rec.coeffs.a_exact(k))));
        b.push_back(real_to_json(rec.coeffs.b_exact(k)));
        break;
    }
  }
  json doc = {{"schema", kSchema},
              {"T", rec.horizon},
              {"a", a},
              {"b", b},
              {"residual", real_to_json(rec.residual)},
              {"path", std::string(to_string(rec.path))},
              {"precision", std::string(to_string(rec.precision))},
              {"min_pivot_ratio", real_to_json(rec.min_pivot_ratio)}};
  doc["path_discrepancy"] = rec.path_discrepancy ? real_to_json(*rec.path_discrepancy) : json(nullptr);
  return doc;
}

std::string grid_to_csv(const std::vector<GridPoint>& grid) {
  std::string out = "re,im,value_re,value_im\n";
  for (const auto& g : grid)
    out += format_double(g.at.real()) + ',' + format_double(g.at.imag()) + ',' + format_double(g.value.real()) + ',' +
           format_double(g.value.imag()) + '\n';
  return out;
}

json grid_to_json(const std::vector<GridPoint>& grid) {
  json arr = json::array();
  for (const auto& g : grid) arr.push_back({{"at", complex_to_json(g.at)}, {"value", complex_to_json(g.value)}});
  return arr;
}

}  // namespace jbc::io
