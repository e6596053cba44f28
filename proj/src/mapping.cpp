#include "qmem/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <thread>

#include "qmem/errors.hpp"

namespace qmem::mapping {
namespace {

using std::numbers::pi;

void require_alpha(double alpha, const char* where) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError(std::string(where) + ": optical depth must be >= 0");
  }
}

// |1 - exp(w)|^2 for w = -alpha (1 + i x) / (1 + x^2), without cancellation
// at small alpha.
double transfer_modulus_sq(double alpha, double x) {
  const double d = 1.0 + x * x;
  const double wr = -alpha / d;
  const double wi = -alpha * x / d;
  const double half = std::sin(0.5 * wi);
  // e^w - 1 = expm1(wr) cos(wi) - 2 sin^2(wi/2) + i e^{wr} sin(wi)
  const double re = std::expm1(wr) * std::cos(wi) - 2.0 * half * half;
  const double im = std::exp(wr) * std::sin(wi);
  return re * re + im * im;
}

// 2 * integral over [0, inf) of an even integrand, split at the scales where
// the integrand changes shape.
specfun::QuadratureResult integrate_even(const std::function<double(double)>& f,
                                         std::vector<double> breaks,
                                         const SpectralOptions& options) {
  breaks.push_back(0.0);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  specfun::QuadratureOptions q;
  q.abs_tol = 0.5 * options.tol / double(breaks.size());
  q.max_evaluations = options.max_evaluations;
  specfun::QuadratureResult total;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double hi = i + 1 < breaks.size() ? breaks[i + 1] : specfun::kInf;
    const auto part = specfun::integrate_adaptive(f, breaks[i], hi, q);
    total.value += part.value;
    total.error_estimate += part.error_estimate;
    total.evaluations += part.evaluations;
  }
  total.value *= 2.0;
  total.error_estimate *= 2.0;
  return total;
}

}  // namespace

SqueezingModel SqueezingModel::flat(double x0_sq) {
  SqueezingModel m;
  m.kind = Kind::Flat;
  m.x0_sq = x0_sq;
  m.validate();
  return m;
}

SqueezingModel SqueezingModel::lorentzian(double gamma_q, double s) {
  SqueezingModel m;
  m.kind = Kind::Lorentzian;
  m.gamma_q = gamma_q;
  m.s = s;
  m.x0_sq = 1.0 - s;
  m.validate();
  return m;
}

void SqueezingModel::validate() const {
  if (kind == Kind::Flat) {
    if (!(x0_sq >= 0.0) || !std::isfinite(x0_sq)) {
      throw DomainError("SqueezingModel: x0_sq must be >= 0");
    }
    return;
  }
  if (!(gamma_q > 0.0) || !std::isfinite(gamma_q)) {
    throw DomainError("SqueezingModel: gamma_q must be > 0");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw DomainError("SqueezingModel: squeezing degree must lie in [0, 1]");
  }
}

double SqueezingModel::density(double x, double gamma) const {
  if (kind == Kind::Flat) return x0_sq;
  const double b = gamma_q / gamma;
  return 1.0 - s * b * b / (b * b + x * x);
}

double SqueezingModel::reference_depth() const {
  return kind == Kind::Flat ? 1.0 - x0_sq : s;
}

NoiseReport make_report(double atom_part, double light_part,
                        double reference_depth) {
  NoiseReport r;
  r.atom_langevin_part = atom_part;
  r.light_part = light_part;
  r.variance_norm = atom_part + light_part;
  if (reference_depth != 0.0) {
    r.eta = (1.0 - r.variance_norm) / reference_depth;
  }
  return r;
}

double residual_vacuum_fraction(double alpha) {
  require_alpha(alpha, "residual_vacuum_fraction");
  return specfun::bessel_i0e(alpha) + specfun::bessel_i1e(alpha);
}

double eta_closed(double alpha) { return 1.0 - residual_vacuum_fraction(alpha); }

NoiseReport variance_closed(double alpha, double x0_sq) {
  require_alpha(alpha, "variance_closed");
  if (!(x0_sq >= 0.0)) throw DomainError("variance_closed: x0_sq < 0");
  const double residual = residual_vacuum_fraction(alpha);
  NoiseReport r;
  r.atom_langevin_part = residual;
  r.light_part = x0_sq * (1.0 - residual);
  // Written so that x0_sq = 1 returns exactly 1.
  r.variance_norm = x0_sq + (1.0 - x0_sq) * residual;
  if (x0_sq != 1.0) r.eta = 1.0 - residual;
  return r;
}

double transmitted_spectrum(double alpha, double x, double s0) {
  require_alpha(alpha, "transmitted_spectrum");
  const double t = std::exp(-alpha / (1.0 + x * x));
  return s0 * t + (1.0 - t);
}

double atomic_light_transfer(double alpha, double x) {
  require_alpha(alpha, "atomic_light_transfer");
  if (alpha == 0.0) return 0.0;
  return transfer_modulus_sq(alpha, x) / (2.0 * pi * alpha);
}

double atomic_langevin_density(double alpha, double x) {
  require_alpha(alpha, "atomic_langevin_density");
  const double d = 1.0 + x * x;
  if (alpha == 0.0) return 1.0 / (pi * d);
  return -std::expm1(-2.0 * alpha / d) / (2.0 * pi * alpha);
}

double atomic_spectral_density(double alpha, double x, double s0) {
  return atomic_light_transfer(alpha, x) * s0 +
         atomic_langevin_density(alpha, x);
}

NoiseReport variance_spectral(double alpha, const SqueezingModel& model,
                              double gamma, const SpectralOptions& options) {
  require_alpha(alpha, "variance_spectral");
  model.validate();
  if (model.kind == SqueezingModel::Kind::Lorentzian && !(gamma > 0.0)) {
    throw DomainError("variance_spectral: gamma must be > 0");
  }
  const double width = std::sqrt(1.0 + alpha);
  std::vector<double> breaks = {1.0, width, 3.0 * width, 10.0 * width};
  if (model.kind == SqueezingModel::Kind::Lorentzian) {
    const double b = model.gamma_q / gamma;
    breaks.push_back(b);
    breaks.push_back(5.0 * b);
  }

  const auto atom = integrate_even(
      [alpha](double x) { return atomic_langevin_density(alpha, x); }, breaks,
      options);
  double light = 0.0;
  if (alpha > 0.0) {
    light = integrate_even(
                [&](double x) {
                  return atomic_light_transfer(alpha, x) *
                         model.density(x, gamma);
                },
                breaks, options)
                .value;
  }
  return make_report(atom.value, light, model.reference_depth());
}

std::vector<CurvePoint> efficiency_curve(std::span<const double> alpha_grid,
                                         const SqueezingModel& model,
                                         double gamma,
                                         const SpectralOptions& options) {
  model.validate();
  for (std::size_t i = 0; i < alpha_grid.size(); ++i) {
    require_alpha(alpha_grid[i], "efficiency_curve");
    if (i > 0 && alpha_grid[i] < alpha_grid[i - 1]) {
      throw DomainError("efficiency_curve: alpha grid must be sorted");
    }
  }

  std::vector<CurvePoint> out(alpha_grid.size());
  auto evaluate = [&](std::size_t i) {
    const double alpha = alpha_grid[i];
    out[i].alpha = alpha;
    if (model.kind == SqueezingModel::Kind::Flat) {
      out[i].eta = variance_closed(alpha, model.x0_sq).eta;
    } else {
      out[i].eta = variance_spectral(alpha, model, gamma, options).eta;
    }
  };

  if (model.kind == SqueezingModel::Kind::Flat || alpha_grid.size() < 8) {
    for (std::size_t i = 0; i < alpha_grid.size(); ++i) evaluate(i);
    return out;
  }

  // Strided split; each task writes disjoint slots so order is unaffected.
  const std::size_t workers = std::clamp<std::size_t>(
      std::thread::hardware_concurrency(), 1, 16);
  std::vector<std::future<void>> tasks;
  for (std::size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < alpha_grid.size(); i += workers) evaluate(i);
    }));
  }
  for (auto& t : tasks) t.get();  // rethrows the first failure
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi >= lo) || n == 0) {
    throw DomainError("log_grid: need 0 < lo <= hi and n >= 1");
  }
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = std::exp(a + (b - a) * double(i) / double(n - 1));
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

}  // namespace qmem::mapping
