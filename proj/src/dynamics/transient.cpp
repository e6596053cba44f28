#include <algorithm>
#include <cmath>

#include "qmem/dynamics.hpp"
#include "qmem/errors.hpp"

namespace qmem::dynamics {
namespace {

// Dimensionless view of a pulse: t = Gamma tau, A(t) = a(t / Gamma) L.
struct ScaledArea {
  const PulseArea& area;
  double length;
  double gamma;

  double at(double t) const { return area.at(t / gamma) * length; }
  double rate(double t) const { return area.rate(t / gamma) * length / gamma; }
};

// Integrates over [0, t] split at the drive knots.
double integrate_pieces(const std::function<double(double)>& f, double t,
                        const std::vector<double>& knots, double tol,
                        std::size_t budget) {
  std::vector<double> edges{0.0};
  for (double k : knots) {
    if (k > 0.0 && k < t) edges.push_back(k);
  }
  edges.push_back(t);
  specfun::QuadratureOptions q;
  q.abs_tol = tol / double(edges.size());
  q.max_evaluations = budget;
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    sum += specfun::integrate_adaptive(f, edges[i], edges[i + 1], q).value;
  }
  return sum;
}

}  // namespace

mapping::NoiseReport transient_variance(const PulseArea& area, double length,
                                        double gamma,
                                        const mapping::SqueezingModel& model,
                                        double tau,
                                        const TransientOptions& options) {
  if (!(tau >= 0.0)) throw DomainError("transient_variance: tau < 0");
  if (!(gamma > 0.0)) throw DomainError("transient_variance: gamma <= 0");
  if (!(length > 0.0)) throw DomainError("transient_variance: length <= 0");
  model.validate();

  const ScaledArea a{area, length, gamma};
  const double t = gamma * tau;
  const double a_t = a.at(t);
  std::vector<double> knots;
  for (double k : area.knot_times()) knots.push_back(k * gamma);

  const double initial = std::exp(-2.0 * t) * squared_j0_kernel_integral(a_t);
  if (t == 0.0) return mapping::make_report(initial, 0.0, model.reference_depth());

  // Langevin force, correlator 2 Gamma / n, spatially integrated.
  const double langevin = integrate_pieces(
      [&](double s) {
        return 2.0 * std::exp(-2.0 * (t - s)) *
               squared_j0_kernel_integral(std::max(a_t - a.at(s), 0.0));
      },
      t, knots, options.tol, options.max_evaluations);

  // Amplitude of the input field at s in the collective spin at t.
  auto amplitude = [&](double s) {
    const double r = specfun::j1_ratio(std::max(a_t - a.at(s), 0.0));
    return std::sqrt(a.rate(s)) * std::exp(-(t - s)) * r;
  };

  const double white = integrate_pieces(
      [&](double s) {
        const double k = amplitude(s);
        return k * k;
      },
      t, knots, options.tol, options.max_evaluations);

  double light = 0.0;
  if (model.kind == mapping::SqueezingModel::Kind::Flat) {
    light = model.x0_sq * white;
  } else {
    // Correlator delta - s b/2 e^{-b|s1 - s2|}; the exponential part folds to
    // s b * int_{s2 < s1} k(s1) k(s2) e^{-b (s1 - s2)}.
    const double b = model.gamma_q / gamma;
    auto inner = [&](double s1) {
      std::vector<double> inner_knots = knots;
      inner_knots.push_back(std::max(0.0, s1 - 1.0 / b));
      inner_knots.push_back(std::max(0.0, s1 - 5.0 / b));
      std::sort(inner_knots.begin(), inner_knots.end());
      return integrate_pieces(
          [&](double s2) { return amplitude(s2) * std::exp(-b * (s1 - s2)); },
          s1, inner_knots, 0.1 * options.lorentzian_tol,
          options.max_evaluations);
    };
    const double colored = integrate_pieces(
        [&](double s1) { return amplitude(s1) * inner(s1); }, t, knots,
        options.lorentzian_tol, options.max_evaluations);
    light = white - model.s * b * colored;
  }
  return mapping::make_report(initial + langevin, light,
                              model.reference_depth());
}

}  // namespace qmem::dynamics
