#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "qmem/cli.hpp"
#include "qmem/errors.hpp"
#include "qmem/mapping.hpp"

namespace qmem::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError(key + ": expected a number");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(key + ": '" + t + "' is not a finite number");
  }
  return v;
}

int parse_int(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError(key + ": expected an integer");
  }
  return int(v);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  const std::string t = trim(text);
  if (t.empty()) return items;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) items.push_back(trim(item));
  return items;
}

// Typed access that remembers which keys were consumed.
class Keys {
 public:
  explicit Keys(const std::map<std::string, std::string>& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.count(key) > 0; }

  bool has_prefix(const std::string& prefix) const {
    return std::any_of(raw_.begin(), raw_.end(), [&](const auto& kv) {
      return kv.first.rfind(prefix, 0) == 0;
    });
  }

  std::optional<double> number(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    return parse_double(key, raw_.at(key));
  }

  double required(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError(key + ": required");
    return *v;
  }

  void integer(const std::string& key, int& out) {
    used_.insert(key);
    if (has(key)) out = parse_int(key, raw_.at(key));
  }

  void real(const std::string& key, double& out) {
    if (auto v = number(key)) out = *v;
  }

  std::optional<std::vector<double>> list(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    std::vector<double> out;
    for (const auto& item : split_list(raw_.at(key))) {
      out.push_back(parse_double(key, item));
    }
    return out;
  }

  std::optional<std::string> text(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    return trim(raw_.at(key));
  }

  void reject_unused() const {
    for (const auto& kv : raw_) {
      if (!used_.count(kv.first)) {
        throw ConfigError(kv.first + ": unknown key");
      }
    }
  }

 private:
  const std::map<std::string, std::string>& raw_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

bool agree(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b));
}

}  // namespace

std::map<std::string, std::string> parse_config_text(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = "line " + std::to_string(line_no);
    if (eq == std::string::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || key.find_first_of(" \t") != std::string::npos) {
      throw ConfigError(where + ": malformed key '" + key + "'");
    }
    if (!out.emplace(key, value).second) {
      throw ConfigError(key + ": duplicate key (" + where + ")");
    }
  }
  return out;
}

double RunConfig::resolved_alpha() const {
  if (alpha) return *alpha;
  if (medium && drive) return model::optical_depth(*medium, *drive);
  throw ConfigError("dimensionless.alpha: required (or give medium and drive)");
}

RunConfig build_run_config(const std::map<std::string, std::string>& raw) {
  Keys k(raw);
  RunConfig c;

  if (k.has_prefix("medium.")) {
    model::MediumParams m;
    m.density = k.required("medium.density_m3");
    m.length = k.required("medium.length_m");
    m.area = k.required("medium.area_m2");
    m.gamma0 = k.required("medium.gamma0_hz");
    m.wavelength = k.required("medium.wavelength_m");
    m.validate();
    c.medium = m;
  }
  if (k.has_prefix("drive.")) {
    model::DriveParams d;
    d.coupling = k.required("drive.coupling_per_m_s");
    d.gamma_s = k.required("drive.gamma_s_hz");
    d.tau_pulse = k.required("drive.tau_pulse_s");
    if (auto prof = k.text("drive.profile")) {
      for (const auto& item : split_list(*prof)) {
        const auto colon = item.find(':');
        require(colon != std::string::npos,
                "drive.profile: segments are 'duration:power'");
        d.profile.push_back(
            {parse_double("drive.profile", item.substr(0, colon)),
             parse_double("drive.profile", item.substr(colon + 1))});
      }
    }
    d.validate();
    c.drive = d;
  }
  if (k.has_prefix("physics.")) {
    model::AtomicPhysics p;
    const auto omega = k.number("physics.omega_rad_s");
    const auto lambda = k.number("physics.wavelength_m");
    require(omega.has_value() != lambda.has_value(),
            "physics.omega_rad_s: give exactly one of omega_rad_s, wavelength_m");
    if (omega) {
      p.omega = *omega;
    } else {
      require(*lambda > 0.0, "physics.wavelength_m: must be > 0");
      p.omega = 2.0 * 3.141592653589793 * model::kSpeedOfLight / *lambda;
    }
    p.detuning = k.required("physics.detuning_hz");
    p.gamma_i = k.required("physics.gamma_i_hz");
    p.dipole_sum = k.required("physics.dipole_sum_c2m2");
    p.saturation = k.required("physics.saturation");
    p.gamma_q = k.required("physics.gamma_q_hz");
    p.wavevector_mismatch = k.number("physics.wavevector_mismatch_per_m").value_or(0.0);
    p.validate();
    c.physics = p;
  }
  k.real("feasibility.ratio", c.feasibility.ratio);
  k.real("feasibility.fresnel_min", c.feasibility.fresnel_min);
  k.real("feasibility.fresnel_max", c.feasibility.fresnel_max);
  require(c.feasibility.ratio > 0.0, "feasibility.ratio: must be > 0");
  require(c.feasibility.fresnel_min <= c.feasibility.fresnel_max,
          "feasibility.fresnel_min: exceeds fresnel_max");

  c.alpha = k.number("dimensionless.alpha");
  if (c.alpha) require(*c.alpha >= 0.0, "dimensionless.alpha: must be >= 0");
  if (c.medium && c.drive) {
    const double gamma = model::total_dephasing(*c.medium, *c.drive, true);
    if (c.alpha && gamma > 0.0) {
      require(agree(*c.alpha, model::optical_depth(*c.medium, *c.drive)),
              "dimensionless.alpha: disagrees with g L / Gamma from the SI block");
    }
  }

  double alpha_min = 1e-2;
  double alpha_max = 1e3;
  int alpha_points = 200;
  k.real("dimensionless.alpha_min", alpha_min);
  k.real("dimensionless.alpha_max", alpha_max);
  k.integer("dimensionless.alpha_points", alpha_points);
  if (auto grid = k.list("dimensionless.alpha_grid")) {
    require(!grid->empty(), "dimensionless.alpha_grid: empty");
    c.alpha_grid = *grid;
  } else {
    require(alpha_min > 0.0 && alpha_max >= alpha_min && alpha_points >= 1,
            "dimensionless.alpha_min: need 0 < alpha_min <= alpha_max, points >= 1");
    c.alpha_grid = mapping::log_grid(alpha_min, alpha_max, std::size_t(alpha_points));
  }
  for (std::size_t i = 0; i < c.alpha_grid.size(); ++i) {
    require(c.alpha_grid[i] >= 0.0, "dimensionless.alpha_grid: values must be >= 0");
    require(i == 0 || c.alpha_grid[i] >= c.alpha_grid[i - 1],
            "dimensionless.alpha_grid: must be sorted");
  }
  if (auto bl = k.list("dimensionless.b_list")) c.b_list = *bl;
  for (double b : c.b_list) require(b > 0.0, "dimensionless.b_list: values must be > 0");
  c.b = k.number("dimensionless.b");
  if (c.b) require(*c.b > 0.0, "dimensionless.b: must be > 0");
  if (c.b && c.medium && c.drive && c.physics) {
    const double gamma = model::total_dephasing(*c.medium, *c.drive, true);
    require(agree(*c.b, c.physics->gamma_q / gamma),
            "dimensionless.b: disagrees with Gamma_q / Gamma from the SI block");
  }
  k.real("dimensionless.s", c.s);
  require(c.s >= 0.0 && c.s <= 1.0, "dimensionless.s: must lie in [0, 1]");
  k.real("dimensionless.x0_sq", c.x0_sq);
  require(c.x0_sq >= 0.0, "dimensionless.x0_sq: must be >= 0");
  if (auto drive = k.text("dimensionless.drive")) {
    require(*drive == "on" || *drive == "off", "dimensionless.drive: 'on' or 'off'");
    c.drive_on = *drive == "on";
  }
  k.real("dimensionless.x_min", c.x_min);
  k.real("dimensionless.x_max", c.x_max);
  k.integer("dimensionless.x_points", c.x_points);
  require(c.x_max >= c.x_min && c.x_points >= 1,
          "dimensionless.x_points: need x_min <= x_max and x_points >= 1");

  k.integer("grid.nz", c.nz);
  k.integer("grid.ntau", c.ntau);
  k.real("grid.tau_gamma", c.tau_gamma);
  k.integer("grid.points", c.points);
  require(c.nz >= 2, "grid.nz: must be >= 2");
  require(c.ntau >= 2, "grid.ntau: must be >= 2");
  require(c.tau_gamma > 0.0, "grid.tau_gamma: must be > 0");
  require(c.points >= 2, "grid.points: must be >= 2");
  if (auto refs = k.list("grid.refinements")) {
    c.refinements.clear();
    for (double v : *refs) {
      require(v >= 2.0 && v == std::floor(v), "grid.refinements: integers >= 2");
      c.refinements.push_back(int(v));
    }
    require(c.refinements.size() >= 2, "grid.refinements: need at least two");
    for (std::size_t i = 1; i < c.refinements.size(); ++i) {
      require(c.refinements[i] > c.refinements[i - 1],
              "grid.refinements: must increase");
    }
  }

  k.real("teleport.alpha_pulse", c.alpha_pulse);
  require(c.alpha_pulse >= 0.0, "teleport.alpha_pulse: must be >= 0");
  c.epr_residual = k.number("teleport.epr_residual");
  if (c.epr_residual) {
    require(*c.epr_residual >= 0.0, "teleport.epr_residual: must be >= 0");
  }
  k.real("teleport.threshold", c.bs_threshold);
  require(c.bs_threshold >= 0.0, "teleport.threshold: must be >= 0");

  k.real("tolerance.quad", c.tol);
  require(c.tol > 0.0, "tolerance.quad: must be > 0");
  if (auto out = k.text("output.path")) c.output = *out;

  k.reject_unused();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return build_run_config(parse_config_text(ss.str()));
}

}  // namespace qmem::cli
