#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qmem/cli.hpp"
#include "qmem/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quantum memory for light: Raman mapping simulations"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string config_path;
  std::string out_path;
  double tol = 0.0;
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--tol", tol, "quadrature tolerance")
      ->check(CLI::PositiveNumber);
  for (const auto& name : qmem::cli::command_names()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qmem::cli::kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  qmem::cli::RunConfig config;
  try {
    config = config_path.empty() ? qmem::cli::build_run_config({})
                                 : qmem::cli::load_config(config_path);
  } catch (const qmem::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qmem::cli::kConfigError;
  }
  if (tol > 0.0) config.tol = tol;
  if (!out_path.empty()) config.output = out_path;

  const auto result = qmem::cli::run_command(command, config);
  if (result.exit_code == qmem::cli::kConfigError ||
      (result.exit_code == qmem::cli::kNotConverged &&
       result.output.rfind("error: ", 0) == 0)) {
    std::cerr << result.output;
    return result.exit_code;
  }
  if (config.output.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream f(config.output, std::ios::binary);
    if (!f) {
      std::cerr << "error: --out: cannot write '" << config.output << "'\n";
      return qmem::cli::kConfigError;
    }
    f << result.output;
  }
  return result.exit_code;
}
