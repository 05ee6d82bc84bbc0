#include "jbc/cli.hpp"
#include "jbc/io.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace jbc;
  CLI::App app{"Boundary control toolkit for Jacobi matrices"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::optional<std::size_t> T, N, N_max;
  std::optional<std::string> precision, orientation;
  std::string format = "json", z = "0+1i", lambda = "0";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "Input JSON file ('-' for stdin)");
    sub->add_option("--output,-o", cfg.output, "Output file ('-' for stdout)");
    sub->add_option("--T", T, "Horizon T");
    sub->add_option("--N", N, "Finite system size N");
    sub->add_option("--N-max", N_max, "Largest section size");
    sub->add_option("--precision", precision, "double | extended | rational");
    sub->add_option("--format", format, "json | csv");
    sub->add_option("--threads", cfg.threads, "Worker threads (output does not depend on it)");
  };

  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {"simulate", "Solve the boundary-controlled system"},
      {"response", "Response vector of given coefficients"},
      {"connect", "Connecting matrix (--method response|spectrum|gram|hankel)"},
      {"recover", "Recover coefficients from a response vector or moments"},
      {"diagnose", "Determinacy report"},
      {"kernel", "Reproducing kernel J_z(lambda)"},
      {"hb", "Hermite-Biehler function E_T"},
      {"moments", "Convert between responses and moments"},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    if (std::string_view(e.name) == "simulate") sub->add_option("--control", cfg.control, "Control JSON file");
    if (std::string_view(e.name) == "connect") {
      sub->add_option("--method", cfg.method, "response | spectrum | gram | hankel");
      sub->add_option("--orientation", orientation, "corner_top | corner_bottom");
    }
    if (std::string_view(e.name) == "kernel" || std::string_view(e.name) == "hb") {
      sub->add_option("--z", z, "Complex point, e.g. 0.5+1i");
      sub->add_option("--grid", cfg.grid, "Evaluate on an n x n grid over [-2,2]^2");
    }
    if (std::string_view(e.name) == "kernel") sub->add_option("--lambda", lambda, "Complex point");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.command = cli::parse_command(app.get_subcommands().front()->get_name());
    cfg.T = T;
    cfg.N = N;
    cfg.N_max = N_max;
    cfg.precision = cli::resolve_precision(precision);
    cfg.format = cli::parse_format(format);
    if (orientation) cfg.orientation = parse_orientation(*orientation);
    cfg.z = io::parse_complex(z);
    cfg.lambda = io::parse_complex(lambda);
  } catch (const Error& e) {
    std::cerr << io::json{{"schema", io::kSchema}, {"error", {{"code", e.code()}, {"message", e.what()}}}}.dump()
              << "\n";
    return 2;
  }
  return cli::run(cfg, std::cout, std::cerr);
}
