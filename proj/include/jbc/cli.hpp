#pragma once

// Command layer behind the jacobi_bc executable. Every command reads its
// inputs, calls library operations and encodes the result; no numerics here.

#include "jbc/connecting.hpp"
#include "jbc/precision.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace jbc::cli {

enum class Command { Simulate, Response, Connect, Recover, Diagnose, Kernel, Hb, Moments };
enum class Format { Json, Csv };

Command parse_command(std::string_view text);
std::string_view to_string(Command c);
Format parse_format(std::string_view text);

struct RunConfig {
  Command command = Command::Diagnose;
  /// Primary input file; "-" reads stdin.
  std::string input = "-";
  /// simulate: optional control file (default: unit impulse).
  std::string control;
  /// "-" writes stdout.
  std::string output = "-";
  std::optional<std::size_t> T, N, N_max;
  PrecisionMode precision = PrecisionMode::Double;
  Format format = Format::Json;
  unsigned threads = 1;
  /// connect: response | spectrum | gram | hankel.
  std::string method = "response";
  /// connect: output orientation; the construction's own when empty.
  std::optional<Orientation> orientation;
  std::complex<double> z{0.0, 1.0};
  std::complex<double> lambda{0.0, 0.0};
  /// kernel / hb: evaluate on an n x n grid over [-2, 2] x [-2, 2] instead of one point.
  std::size_t grid = 0;
};

/// Precision from the flag when given, else JACOBI_BC_PRECISION, else double.
PrecisionMode resolve_precision(const std::optional<std::string>& flag);

struct RunResult {
  int exit_code = 0;
  std::string output;
  /// Machine-readable error document, empty on success.
  std::string error;
};

/// Runs one command in memory. Exit codes: 0 success, 2 invalid input, 1 internal error.
RunResult execute(const RunConfig& config);

/// execute() plus delivery: output to config.output (or `out`), errors to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace jbc::cli
