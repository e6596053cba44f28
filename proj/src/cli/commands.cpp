#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "qmem/cli.hpp"
#include "qmem/dynamics.hpp"
#include "qmem/errors.hpp"
#include "qmem/mapping.hpp"
#include "qmem/teleport.hpp"

namespace qmem::cli {
namespace {

using mapping::SqueezingModel;

SqueezingModel single_model(const RunConfig& c) {
  if (c.b) return SqueezingModel::lorentzian(*c.b, c.s);
  return SqueezingModel::flat(c.x0_sq);
}

mapping::SpectralOptions spectral_options(const RunConfig& c) {
  mapping::SpectralOptions o;
  o.tol = c.tol;
  return o;
}

// Dimensionless drive: Gamma = 1 and L = 1, so a(t) = alpha t.
dynamics::PulseArea dimensionless_area(double alpha, bool on) {
  return on ? dynamics::PulseArea::constant(alpha) : dynamics::PulseArea::off();
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  line += '\n';
  return line;
}

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass() const { return std::isfinite(value) && value <= tolerance; }
};

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

CommandResult cmd_efficiency(const RunConfig& c) {
  std::vector<std::string> header{"alpha", "eta_flat"};
  std::vector<std::vector<mapping::CurvePoint>> columns;
  // eta for flat input does not depend on x0_sq; use perfect squeezing.
  columns.push_back(
      mapping::efficiency_curve(c.alpha_grid, SqueezingModel::flat(0.0), 1.0));
  for (double b : c.b_list) {
    header.push_back("eta_b" + format_number(b));
    columns.push_back(mapping::efficiency_curve(
        c.alpha_grid, SqueezingModel::lorentzian(b, c.s), 1.0,
        spectral_options(c)));
  }
  CommandResult r;
  r.output = join(header);
  for (std::size_t i = 0; i < c.alpha_grid.size(); ++i) {
    std::vector<std::string> row{format_number(c.alpha_grid[i])};
    for (const auto& col : columns) row.push_back(format_number(col[i].eta));
    r.output += join(row);
  }
  return r;
}

CommandResult cmd_spectrum(const RunConfig& c) {
  const double alpha = c.resolved_alpha();
  const SqueezingModel model = single_model(c);
  CommandResult r;
  r.output = join({"x", "transmitted", "atomic_density"});
  for (int i = 0; i < c.x_points; ++i) {
    const double x =
        c.x_points == 1 ? c.x_min
                        : c.x_min + (c.x_max - c.x_min) * i / (c.x_points - 1);
    const double s0 = model.density(x, 1.0);
    r.output += join({format_number(x),
                      format_number(mapping::transmitted_spectrum(alpha, x, s0)),
                      format_number(mapping::atomic_spectral_density(alpha, x, s0))});
  }
  return r;
}

CommandResult cmd_transient(const RunConfig& c) {
  const double alpha = c.drive_on ? c.resolved_alpha() : 0.0;
  const auto area = dimensionless_area(alpha, c.drive_on);
  const SqueezingModel model = single_model(c);
  dynamics::TransientOptions opts;
  opts.lorentzian_tol = c.tol;
  CommandResult r;
  r.output = join({"tau_gamma", "variance_norm", "eta"});
  for (int i = 0; i < c.points; ++i) {
    const double t = c.tau_gamma * i / (c.points - 1);
    const auto rep = dynamics::transient_variance(area, 1.0, 1.0, model, t, opts);
    r.output += join({format_number(t), format_number(rep.variance_norm),
                      format_number(rep.eta)});
  }
  return r;
}

CommandResult cmd_simulate(const RunConfig& c) {
  const double alpha = c.drive_on ? c.resolved_alpha() : 0.0;
  const auto area = dimensionless_area(alpha, c.drive_on);
  const SqueezingModel model = single_model(c);
  CommandResult r;
  r.output = join({"n", "light_kernel_error", "initial_kernel_error",
                   "variance_norm", "eta", "acausal_max"});
  std::vector<double> light_errors;
  std::vector<double> initial_errors;
  for (int n : c.refinements) {
    dynamics::GridSpec grid;
    grid.nz = n;
    grid.ntau = n;
    grid.length = 1.0;
    grid.tau_max = c.tau_gamma;
    const auto res = dynamics::simulate_grid(area, 1.0, grid, model);
    const double le = dynamics::light_kernel_error(res.kernels, area, 1.0, 1.0);
    const double ie = dynamics::initial_kernel_error(res.kernels, area, 1.0, 1.0);
    light_errors.push_back(le);
    initial_errors.push_back(ie);
    r.output += join({std::to_string(n), format_number(le), format_number(ie),
                      format_number(res.report.variance_norm),
                      format_number(res.report.eta),
                      format_number(res.kernels.acausal_max)});
  }

  // Refinement report; error-free runs (drive off) count as converged.
  const auto light_orders = dynamics::observed_orders(light_errors, c.refinements);
  const auto initial_orders =
      dynamics::observed_orders(initial_errors, c.refinements);
  std::string lo;
  std::string io;
  for (std::size_t i = 0; i < light_orders.size(); ++i) {
    lo += (i ? ";" : "") + format_number(light_orders[i]);
    io += (i ? ";" : "") + format_number(initial_orders[i]);
  }
  r.output += "# light_kernel_order = " + lo + "\n";
  r.output += "# initial_kernel_order = " + io + "\n";
  bool converged = light_errors.back() < 1e-12;
  if (!converged) {
    converged = true;
    for (std::size_t i = 0; i + 1 < light_errors.size(); ++i) {
      converged = converged && light_errors[i + 1] < light_errors[i];
    }
    const double last = light_orders.back();
    converged = converged && last >= 0.8 && last <= 1.2;
  }
  r.output += std::string("# convergence = ") + (converged ? "ok" : "failed") + "\n";
  if (!converged) r.exit_code = kNotConverged;
  return r;
}

CommandResult cmd_teleport(const RunConfig& c) {
  const auto bs = teleport::coupling_r(c.alpha_pulse, c.bs_threshold);
  const auto out =
      teleport::apply_linear_bs(teleport::TwoModeGaussian::vacuum(), bs.r);
  CommandResult r;
  r.output = join({"quantity", "value"});
  auto row = [&](const std::string& k, const std::string& v) {
    r.output += join({k, v});
  };
  row("r", format_number(bs.r));
  row("valid", bs.valid ? "true" : "false");
  row("epr_requirement", format_number(bs.epr_requirement));
  row("commutator_defect", format_number(bs.commutator_defect));
  row("vacuum_variance_after", format_number(out.cov[0][0]));
  bool ok = bs.valid;
  if (c.epr_residual) {
    const auto nb = teleport::readout_noise_budget(bs.r, *c.epr_residual);
    row("epr_residual", format_number(nb.epr_residual));
    row("epr_ratio", format_number(nb.ratio));
    row("classical_baseline", format_number(nb.classical_baseline));
    row("epr_condition", nb.pass ? "pass" : "fail");
    ok = ok && nb.pass;
  }
  if (!ok) r.exit_code = kCheckFailed;
  return r;
}

CommandResult cmd_feasibility(const RunConfig& c) {
  if (!c.medium) throw ConfigError("medium: SI block required for feasibility");
  if (!c.drive) throw ConfigError("drive: SI block required for feasibility");
  if (!c.physics) throw ConfigError("physics: SI block required for feasibility");
  const auto rep =
      model::check_feasibility(*c.medium, *c.drive, *c.physics, c.feasibility);
  CommandResult r;
  r.output = join({"condition", "left", "right", "required_ratio", "status"});
  for (const auto& cond : rep.conditions) {
    r.output += join({cond.name, format_number(cond.left),
                      format_number(cond.right),
                      format_number(cond.required_ratio),
                      cond.pass ? "PASS" : "FAIL"});
  }
  r.output += join({"overall", "", "", "", rep.overall_pass ? "PASS" : "FAIL"});
  if (!rep.overall_pass) r.exit_code = kCheckFailed;
  return r;
}

CommandResult cmd_verify(const RunConfig& c) {
  std::vector<Check> checks;
  const auto vacuum = SqueezingModel::flat(1.0);
  const auto squeezed = SqueezingModel::flat(0.0);
  mapping::SpectralOptions sopt = spectral_options(c);
  sopt.tol = std::min(sopt.tol, 1e-9);

  for (double a : {0.0, 0.5, 5.0, 50.0}) {
    const std::string tag = format_number(a);
    checks.push_back({"closed_vacuum_alpha_" + tag,
                      std::abs(mapping::variance_closed(a, 1.0).variance_norm - 1.0),
                      1e-12});
    checks.push_back(
        {"spectral_vacuum_alpha_" + tag,
         std::abs(mapping::variance_spectral(a, vacuum, 1.0, sopt).variance_norm - 1.0),
         1e-6});
    dynamics::GridSpec grid;
    grid.length = 1.0;
    grid.tau_max = 10.0;
    const auto g = dynamics::simulate_grid(dynamics::PulseArea::constant(a), 1.0,
                                           grid, vacuum);
    checks.push_back({"grid_vacuum_alpha_" + tag,
                      std::abs(g.report.variance_norm - 1.0), 5e-3});
  }

  for (double a : {0.1, 1.0, 10.0, 60.0}) {
    const double closed = mapping::variance_closed(a, 0.0).variance_norm;
    const double spectral =
        mapping::variance_spectral(a, squeezed, 1.0, sopt).variance_norm;
    checks.push_back({"spectral_vs_closed_alpha_" + format_number(a),
                      std::abs(spectral - closed) / closed, 1e-6});
  }

  for (double a : {1.0, 10.0}) {
    const double closed = mapping::variance_closed(a, 0.0).variance_norm;
    const auto tr = dynamics::transient_variance(
        dynamics::PulseArea::constant(a), 1.0, 1.0, squeezed, 10.0);
    checks.push_back({"transient_vs_closed_alpha_" + format_number(a),
                      std::abs(tr.variance_norm - closed), 1e-3});
  }

  {
    // Colored input: long-time transient against the spectral integral.
    const auto lor = SqueezingModel::lorentzian(10.0, 1.0);
    const double spectral =
        mapping::variance_spectral(5.0, lor, 1.0, sopt).variance_norm;
    const auto tr = dynamics::transient_variance(
        dynamics::PulseArea::constant(5.0), 1.0, 1.0, lor, 15.0);
    checks.push_back({"transient_vs_spectral_lorentzian_b_10_alpha_5",
                      std::abs(tr.variance_norm - spectral), 1e-6});
  }

  {
    // Langevin sources integrated over position reproduce the J0 kernel.
    const double area = 7.0;
    specfun::QuadratureOptions q;
    q.abs_tol = 1e-13;
    const double direct =
        specfun::integrate_adaptive(
            [&](double zeta) {
              const double j = specfun::bessel_j0(2.0 * std::sqrt(area * (1.0 - zeta)));
              return j * j;
            },
            0.0, 1.0, q)
            .value;
    checks.push_back({"langevin_position_integral",
                      std::abs(direct - dynamics::squared_j0_kernel_integral(area)),
                      1e-10});
  }

  {
    dynamics::GridSpec grid;
    grid.nz = 200;
    grid.ntau = 200;
    grid.length = 1.0;
    grid.tau_max = 1.0;
    const auto area = dynamics::PulseArea::constant(1.0);
    const auto g = dynamics::simulate_grid(area, 1.0, grid, vacuum);
    checks.push_back({"grid_light_kernel_alpha_1",
                      dynamics::light_kernel_error(g.kernels, area, 1.0, 1.0),
                      5e-3});
    checks.push_back({"grid_causality", g.kernels.acausal_max, 0.0});
  }

  checks.push_back({"bs_commutator_defect_r_0.1",
                    std::abs(teleport::commutator_defect(0.1) - 0.01), 1e-12});

  CommandResult r;
  r.output = join({"check", "value", "tolerance", "status"});
  bool all = true;
  for (const auto& ch : checks) {
    r.output += join({ch.name, format_number(ch.value), format_number(ch.tolerance),
                      ch.pass() ? "PASS" : "FAIL"});
    all = all && ch.pass();
  }
  r.output += join({"overall", "", "", all ? "PASS" : "FAIL"});
  if (!all) r.exit_code = kCheckFailed;
  return r;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{
      "efficiency", "spectrum", "transient", "simulate",
      "teleport",   "feasibility", "verify"};
  return names;
}

CommandResult run_command(const std::string& name, const RunConfig& config) {
  static const std::map<std::string, std::function<CommandResult(const RunConfig&)>>
      table{{"efficiency", cmd_efficiency}, {"spectrum", cmd_spectrum},
            {"transient", cmd_transient},   {"simulate", cmd_simulate},
            {"teleport", cmd_teleport},     {"feasibility", cmd_feasibility},
            {"verify", cmd_verify}};
  CommandResult r;
  try {
    const auto it = table.find(name);
    if (it == table.end()) throw ConfigError("unknown command '" + name + "'");
    return it->second(config);
  } catch (const ConfigError& e) {
    r.exit_code = kConfigError;
    r.output = std::string("error: ") + e.what() + "\n";
  } catch (const DomainError& e) {
    r.exit_code = kConfigError;
    r.output = std::string("error: ") + e.what() + "\n";
  } catch (const ConvergenceError& e) {
    r.exit_code = kNotConverged;
    r.output = std::string("error: ") + e.what() + "\n";
  } catch (const NumericalError& e) {
    r.exit_code = kNotConverged;
    r.output = std::string("error: ") + e.what() + "\n";
  }
  return r;
}

}  // namespace qmem::cli
