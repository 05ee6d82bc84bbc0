#include "jbc/cli.hpp"

#include "jbc/connecting.hpp"
#include "jbc/debranges.hpp"
#include "jbc/determinacy.hpp"
#include "jbc/dynamics.hpp"
#include "jbc/inverse.hpp"
#include "jbc/io.hpp"
#include "jbc/moments.hpp"
#include "jbc/spectral.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>

namespace jbc::cli {

using io::json;

namespace {

std::string lower(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  return t;
}

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::Simulate, "simulate"}, {Command::Response, "response"}, {Command::Connect, "connect"},
    {Command::Recover, "recover"},   {Command::Diagnose, "diagnose"}, {Command::Kernel, "kernel"},
    {Command::Hb, "hb"},             {Command::Moments, "moments"},
};

std::size_t require(const std::optional<std::size_t>& v, const char* flag) {
  if (!v) throw InvalidArgument(std::string("missing required option ") + flag);
  if (*v == 0) throw InvalidArgument(std::string(flag) + " must be positive");
  return *v;
}

json header(const RunConfig& cfg, PrecisionMode precision) {
  return {{"schema", io::kSchema},
          {"command", std::string(to_string(cfg.command))},
          {"precision", std::string(jbc::to_string(precision))}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

bool is_coefficient_doc(const json& doc) {
  return doc.is_object() && (doc.contains("a") || doc.contains("generator"));
}

std::vector<std::complex<double>> grid_points(std::size_t n) {
  std::vector<std::complex<double>> pts;
  const double step = n > 1 ? 4.0 / static_cast<double>(n - 1) : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) pts.emplace_back(-2.0 + step * k, -2.0 + step * i);
  return pts;
}

// ---------------------------------------------------------------- simulate

template <class V>
std::string simulate(const RunConfig& cfg) {
  const auto coeffs = io::coefficients_from_json(io::read_json(cfg.input));
  const std::size_t T = require(cfg.T, "--T");
  std::vector<BoundaryControl<V>> controls;
  if (cfg.control.empty()) {
    controls.push_back(BoundaryControl<V>::impulse(T));
  } else {
    const json doc = io::read_json(cfg.control);
    if (doc.is_object() && doc.contains("controls")) {
      for (const auto& c : doc["controls"]) controls.emplace_back(io::reals_as<V>(c));
    } else {
      controls.emplace_back(io::reals_as<V>(io::sequence_field(doc, "control")));
    }
  }

  std::vector<WaveField<V>> fields;
  if (cfg.N) {
    for (const auto& c : controls) fields.push_back(solve_finite<V>(coeffs, *cfg.N, c, T));
  } else {
    fields = solve_semi_infinite_batch<V>(coeffs, controls, T, cfg.threads);
  }

  if (cfg.format == Format::Csv) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields.size() > 1) out += "# control " + std::to_string(i) + "\n";
      out += io::wave_field_to_csv(fields[i]);
    }
    return out;
  }
  json doc = header(cfg, precision_of<V>());
  doc["T"] = T;
  doc["system"] = cfg.N ? "finite" : "semi_infinite";
  if (cfg.N) doc["N"] = *cfg.N;
  json arr = json::array();
  for (const auto& f : fields) arr.push_back(io::wave_field_to_json(f));
  doc["fields"] = arr;
  return dump(doc);
}

// ---------------------------------------------------------------- response

template <class R>
std::string response(const RunConfig& cfg) {
  const auto coeffs = io::coefficients_from_json(io::read_json(cfg.input));
  const std::size_t L = cfg.N ? 2 * *cfg.N : 2 * require(cfg.T, "--T") - 1;
  const auto r = response_vector<R>(coeffs, L);
  if (cfg.format == Format::Csv) {
    std::string out = "t,r\n";
    for (std::size_t t = 0; t < L; ++t) out += std::to_string(t) + ',' + io::real_to_csv(r[t]) + '\n';
    return out;
  }
  json doc = header(cfg, precision_of<R>());
  doc["response"] = io::reals_to_json(r.values);
  return dump(doc);
}

// ---------------------------------------------------------------- connect

template <class R>
std::string emit_connecting(const RunConfig& cfg, ConnectingMatrix<R> c, PrecisionMode precision) {
  if (cfg.orientation) c = c.oriented(*cfg.orientation);
  if (cfg.format == Format::Csv) return "# orientation " + std::string(to_string(c.orientation)) + "\n" + io::matrix_to_csv(c.C);
  json doc = header(cfg, precision);
  doc["method"] = cfg.method;
  doc.update(io::connecting_to_json(c));
  return dump(doc);
}

template <class R>
std::string connect(const RunConfig& cfg) {
  const json doc = io::read_json(cfg.input);
  const std::string method = lower(cfg.method);
  if (method == "response") {
    const ResponseVector<R> r{io::reals_as<R>(io::sequence_field(doc, "response"))};
    const std::size_t T = cfg.T ? *cfg.T : (r.size() + 1) / 2;
    return emit_connecting(cfg, connecting_from_response(r, T), precision_of<R>());
  }
  if (method == "hankel") {
    const MomentSequence<R> s{io::reals_as<R>(io::sequence_field(doc, "moments"))};
    const std::size_t T = cfg.T ? *cfg.T : (s.size() + 1) / 2;
    return emit_connecting(cfg, connecting_from_hankel(build_hankel(s, T)), precision_of<R>());
  }
  const auto coeffs = io::coefficients_from_json(doc);
  const std::size_t T = require(cfg.T, "--T");
  if (method == "gram") return emit_connecting(cfg, gram_from_control<R>(coeffs, T), precision_of<R>());
  if (method == "spectrum") {
    // spectral data is computed in double precision
    const std::size_t N = cfg.N ? *cfg.N : T;
    return emit_connecting(cfg, connecting_from_spectrum(spectral_data(coeffs, N), T), PrecisionMode::Double);
  }
  throw InvalidArgument("unknown connect method '" + cfg.method + "' (response, spectrum, gram, hankel)");
}

// ---------------------------------------------------------------- recover

template <class R>
std::string recover(const RunConfig& cfg) {
  const json doc = io::read_json(cfg.input);
  RecoveryResult rec = [&] {
    if (doc.is_object() && doc.contains("moments")) {
      const MomentSequence<R> s{io::reals_as<R>(doc["moments"])};
      return recover_from_moments(s, cfg.T ? *cfg.T : (s.size() + 1) / 2);
    }
    const ResponseVector<R> r{io::reals_as<R>(io::sequence_field(doc, "response"))};
    return recover_from_response(r, cfg.T ? *cfg.T : (r.size() + 1) / 2);
  }();
  if (cfg.format == Format::Csv) {
    std::string out = "k,a_k,b_k\n";
    const auto a = rec.a(), b = rec.b();
    for (std::size_t k = 0; k < a.size(); ++k)
      out += std::to_string(k + 1) + ',' + io::format_double(a[k]) + ',' + io::format_double(b[k]) + '\n';
    return out;
  }
  json out = io::recovery_to_json(rec);
  out["command"] = "recover";
  return dump(out);
}

// ---------------------------------------------------------------- diagnose

std::string diagnose(const RunConfig& cfg) {
  const auto coeffs = io::coefficients_from_json(io::read_json(cfg.input));
  const std::size_t N_max = cfg.N_max ? *cfg.N_max : 24;
  if (N_max == 0) throw InvalidArgument("--N-max must be positive");
  const auto rep = classify(coeffs, N_max);
  if (cfg.format == Format::Csv) return io::report_to_csv(rep);
  json doc = io::report_to_json(rep);
  doc["command"] = "diagnose";
  doc["precision"] = "double";
  return dump(doc);
}

// ---------------------------------------------------------------- kernel

template <class R>
std::string kernel(const RunConfig& cfg) {
  const auto coeffs = io::coefficients_from_json(io::read_json(cfg.input));
  const std::size_t T = require(cfg.T, "--T");
  if (cfg.grid > 0) {
    std::vector<io::GridPoint> grid;
    for (const auto& l : grid_points(cfg.grid)) grid.push_back({l, kernel_finite(coeffs, cfg.z, l, T)});
    if (cfg.format == Format::Csv) return io::grid_to_csv(grid);
    json doc = header(cfg, PrecisionMode::Double);
    doc["T"] = T;
    doc["z"] = io::complex_to_json(cfg.z);
    doc["grid"] = io::grid_to_json(grid);
    return dump(doc);
  }
  // Krein backend from the response data of the same coefficients
  const auto r = response_vector<R>(coeffs, 2 * T - 1);
  const auto c = connecting_from_response(r, T).oriented(Orientation::CornerTop);
  const auto sol = krein_solve(c, to_complex<R>(cfg.z));
  const auto krein = to_std_complex(kernel_krein(sol, to_complex<R>(cfg.lambda)));
  const auto poly = kernel_finite(coeffs, cfg.z, cfg.lambda, T);
  if (cfg.format == Format::Csv)
    return "backend,value_re,value_im\npolynomial," + io::format_double(poly.real()) + ',' +
           io::format_double(poly.imag()) + "\nkrein," + io::format_double(krein.real()) + ',' +
           io::format_double(krein.imag()) + '\n';
  json doc = header(cfg, precision_of<R>());
  doc["T"] = T;
  doc["z"] = io::complex_to_json(cfg.z);
  doc["lambda"] = io::complex_to_json(cfg.lambda);
  doc["polynomial"] = io::complex_to_json(poly);
  doc["krein"] = io::complex_to_json(krein);
  doc["krein_residual"] = io::real_to_json(sol.residual);
  return dump(doc);
}

// ---------------------------------------------------------------- hb

std::string hb(const RunConfig& cfg) {
  const auto coeffs = io::coefficients_from_json(io::read_json(cfg.input));
  const std::size_t T = require(cfg.T, "--T");
  const auto E = hb_function(coeffs, T);
  if (cfg.grid > 0) {
    std::vector<io::GridPoint> grid;
    for (const auto& z : grid_points(cfg.grid)) grid.push_back({z, E(z)});
    if (cfg.format == Format::Csv) return io::grid_to_csv(grid);
    json doc = header(cfg, PrecisionMode::Double);
    doc["T"] = T;
    doc["grid"] = io::grid_to_json(grid);
    return dump(doc);
  }
  const auto ez = E(cfg.z), ezc = E(std::conj(cfg.z));
  // fixed sample set, so repeated runs agree byte for byte
  std::vector<std::pair<std::complex<double>, std::complex<double>>> pts;
  for (int k = 0; k < 8; ++k) pts.push_back({{-1.0 + 0.25 * k, 0.5 + 0.1 * k}, {0.3 - 0.2 * k, -0.4 + 0.15 * k}});
  const auto kc = measure_kernel_constant(E, coeffs, pts);
  if (cfg.format == Format::Csv)
    return "quantity,re,im\nE(z)," + io::format_double(ez.real()) + ',' + io::format_double(ez.imag()) +
           "\nE(conj z)," + io::format_double(ezc.real()) + ',' + io::format_double(ezc.imag()) + '\n';
  json doc = header(cfg, PrecisionMode::Double);
  doc["T"] = T;
  doc["z"] = io::complex_to_json(cfg.z);
  doc["E"] = io::complex_to_json(ez);
  doc["E_conj"] = io::complex_to_json(ezc);
  doc["norm_squared"] = io::real_to_json(E.norm_squared());
  if (cfg.z.imag() > 0.0) doc["hermite_biehler_holds"] = std::abs(ez) > std::abs(ezc);
  doc["kernel_constant"] = {{"mean", io::complex_to_json(kc.mean)},
                            {"spread", io::real_to_json(kc.spread)},
                            {"samples", kc.samples}};
  return dump(doc);
}

// ---------------------------------------------------------------- moments

template <class R>
std::string moments(const RunConfig& cfg) {
  const json doc = io::read_json(cfg.input);
  json out = header(cfg, precision_of<R>());
  std::vector<R> values;
  std::string key;
  if (is_coefficient_doc(doc)) {
    const auto coeffs = io::coefficients_from_json(doc);
    const auto s = moments_from_coefficients<R>(coeffs, 2 * require(cfg.T, "--T") - 1);
    values = s.values;
    key = "moments";
  } else if (doc.is_object() && doc.contains("moments")) {
    const MomentSequence<R> s{io::reals_as<R>(doc["moments"])};
    values = moments_to_response(s).values;
    key = "response";
    const std::size_t N_max = cfg.N_max ? *cfg.N_max : (s.size() + 1) / 2;
    const auto rep = hankel_positivity(s, N_max);
    out["hankel_positivity"] = {{"min_eigenvalues", io::reals_to_json(rep.min_eigenvalues)},
                                {"positive", rep.positive},
                                {"first_failure", rep.first_failure ? json(*rep.first_failure) : json(nullptr)},
                                {"conditioning_warnings", rep.conditioning_warnings}};
  } else {
    const ResponseVector<R> r{io::reals_as<R>(io::sequence_field(doc, "response"))};
    values = response_to_moments(r).values;
    key = "moments";
  }
  if (cfg.format == Format::Csv) {
    std::string csv = "k," + key + "\n";
    for (std::size_t k = 0; k < values.size(); ++k) csv += std::to_string(k) + ',' + io::real_to_csv(values[k]) + '\n';
    return csv;
  }
  out[key] = io::reals_to_json(values);
  return dump(out);
}

template <class R>
std::string dispatch_real(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::Simulate: return simulate<R>(cfg);
    case Command::Response: return response<R>(cfg);
    case Command::Connect: return connect<R>(cfg);
    case Command::Recover: return recover<R>(cfg);
    case Command::Moments: return moments<R>(cfg);
    case Command::Kernel:
      if constexpr (is_exact_v<R>) {
        return kernel<Extended>(cfg);  // Krein solves need square roots
      } else {
        return kernel<R>(cfg);
      }
    case Command::Diagnose: return diagnose(cfg);
    case Command::Hb: return hb(cfg);
  }
  throw InvalidArgument("unknown command");
}

std::string error_document(const std::string& code, const std::string& message) {
  return json{{"schema", io::kSchema}, {"error", {{"code", code}, {"message", message}}}}.dump() + "\n";
}

}  // namespace

Command parse_command(std::string_view text) {
  const std::string t = lower(text);
  for (const auto& [c, name] : kCommands)
    if (t == name) return c;
  throw ParseError("unknown command '" + std::string(text) + "'");
}

std::string_view to_string(Command c) {
  for (const auto& [cmd, name] : kCommands)
    if (cmd == c) return name;
  return "unknown";
}

Format parse_format(std::string_view text) {
  const std::string t = lower(text);
  if (t == "json") return Format::Json;
  if (t == "csv") return Format::Csv;
  throw ParseError("unknown format '" + std::string(text) + "' (json, csv)");
}

PrecisionMode resolve_precision(const std::optional<std::string>& flag) {
  if (flag) return parse_precision(*flag);
  if (const char* env = std::getenv("JACOBI_BC_PRECISION"); env && *env) return parse_precision(env);
  return PrecisionMode::Double;
}

RunResult execute(const RunConfig& cfg) {
  RunResult res;
  try {
    switch (cfg.precision) {
      case PrecisionMode::Double: res.output = dispatch_real<double>(cfg); break;
      case PrecisionMode::Extended: res.output = dispatch_real<Extended>(cfg); break;
      case PrecisionMode::Rational: res.output = dispatch_real<Rational>(cfg); break;
    }
  } catch (const Error& e) {
    res.exit_code = e.is_validation() ? 2 : 1;
    res.error = error_document(e.code(), e.what());
  } catch (const io::json::exception& e) {
    res.exit_code = 2;
    res.error = error_document("parse_error", e.what());
  } catch (const std::exception& e) {
    res.exit_code = 1;
    res.error = error_document("internal", e.what());
  }
  if (res.exit_code != 0) res.output.clear();
  return res;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  RunResult res = execute(cfg);
  if (res.exit_code == 0) {
    if (cfg.output.empty() || cfg.output == "-") {
      out << res.output;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) {
        err << error_document("io_error", "cannot write '" + cfg.output + "'");
        return 1;
      }
      file << res.output;
    }
  } else {
    err << res.error;
  }
  return res.exit_code;
}

}  // namespace jbc::cli
