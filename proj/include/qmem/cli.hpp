#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmem/model.hpp"

namespace qmem::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kNotConverged = 3,
};

/// Parses `key = value` lines. Blank lines and text after `#` are ignored.
/// Throws ConfigError (with the line number) on malformed or duplicate keys.
std::map<std::string, std::string> parse_config_text(std::string_view text);

struct RunConfig {
  // SI blocks, present only when at least one of their keys is given.
  std::optional<model::MediumParams> medium;
  std::optional<model::DriveParams> drive;
  std::optional<model::AtomicPhysics> physics;
  model::FeasibilityOptions feasibility;

  // Dimensionless block.
  std::optional<double> alpha;
  std::vector<double> alpha_grid;     // efficiency sweep
  std::vector<double> b_list{50.0, 10.0};
  std::optional<double> b;            // Lorentzian bandwidth for single runs
  double s = 1.0;
  double x0_sq = 0.0;
  bool drive_on = true;
  double x_min = -20.0;
  double x_max = 20.0;
  int x_points = 401;

  // Time and space discretization.
  int nz = 200;
  int ntau = 200;
  double tau_gamma = 10.0;
  int points = 101;
  std::vector<int> refinements{50, 100, 200, 400};

  // Read-out analysis.
  double alpha_pulse = 0.01;
  std::optional<double> epr_residual;
  double bs_threshold = 0.3;

  double tol = 1e-9;
  std::string output;  // empty: stdout

  /// alpha from the dimensionless block, else from the SI block.
  double resolved_alpha() const;
};

/// Builds a RunConfig from parsed keys. Unknown keys, bad numbers and
/// contradictory SI/dimensionless values raise ConfigError naming the key.
RunConfig build_run_config(const std::map<std::string, std::string>& keys);

/// Reads and parses a config file.
RunConfig load_config(const std::string& path);

struct CommandResult {
  int exit_code = kOk;
  std::string output;
};

/// %.12g with '.' decimal separator; empty for a missing value.
std::string format_number(double v);
std::string format_number(const std::optional<double>& v);

CommandResult cmd_efficiency(const RunConfig& config);
CommandResult cmd_spectrum(const RunConfig& config);
CommandResult cmd_transient(const RunConfig& config);
CommandResult cmd_simulate(const RunConfig& config);
CommandResult cmd_teleport(const RunConfig& config);
CommandResult cmd_feasibility(const RunConfig& config);
CommandResult cmd_verify(const RunConfig& config);

const std::vector<std::string>& command_names();

/// Dispatches by name and maps exceptions to exit codes. Error text goes to
/// `output` prefixed with "error: ".
CommandResult run_command(const std::string& name, const RunConfig& config);

}  // namespace qmem::cli
