#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qmem/specfun.hpp"

namespace qmem::mapping {

/// Quadrature statistics of the incident light.
///
/// Flat:        S0(x) = x0_sq for every detuning (broadband input).
/// Lorentzian:  S0(Delta) = 1 - s Gamma_q^2 / (Gamma_q^2 + Delta^2), the
///              spectrum of the correlator delta(t) - s Gamma_q/2 e^{-Gamma_q|t|}.
struct SqueezingModel {
  enum class Kind { Flat, Lorentzian };

  Kind kind = Kind::Flat;
  double x0_sq = 1.0;
  double gamma_q = 0.0;  // [1/s], Lorentzian only
  double s = 1.0;        // squeezing degree in [0, 1], Lorentzian only

  static SqueezingModel flat(double x0_sq);
  static SqueezingModel lorentzian(double gamma_q, double s = 1.0);

  /// Throws DomainError when the density could go negative.
  void validate() const;

  /// Input density at dimensionless detuning x = Delta/Gamma.
  double density(double x, double gamma) const;

  /// Depth of squeezing that defines the efficiency denominator
  /// (1 - x0_sq for flat input, s for the Lorentzian dip).
  double reference_depth() const;
};

/// Atomic quadrature noise in units of nL, split by origin.
struct NoiseReport {
  double variance_norm = 1.0;
  std::optional<double> eta;  // empty when the input has no squeezing
  double atom_langevin_part = 1.0;
  double light_part = 0.0;
};

/// Builds a report from the two parts; eta = (1 - variance) / depth.
NoiseReport make_report(double atom_part, double light_part,
                        double reference_depth);

/// e^{-alpha}(I0(alpha) + I1(alpha)), the unreduced vacuum fraction.
double residual_vacuum_fraction(double alpha);

/// 1 - e^{-alpha}(I0 + I1): mapping efficiency for broadband input.
double eta_closed(double alpha);

/// Steady-state atomic variance for flat input. alpha < 0 is a domain error.
NoiseReport variance_closed(double alpha, double x0_sq);

/// Transmitted light spectrum S0 T + (1 - T), T = exp(-alpha / (1 + x^2)).
double transmitted_spectrum(double alpha, double x, double s0);

/// Spectral density of the collective spin quadrature at x = Delta/Gamma,
/// normalized so that its integral over x is variance_norm:
///
///   [ |1 - e^{ikL}|^2 S0 + (1 - e^{-2 alpha / (1 + x^2)}) ] / (2 pi alpha)
///
/// with ikL = -alpha / (1 - i x). The first term is the absorbed light, the
/// second the spatially integrated Langevin noise. At alpha = 0 the density
/// is the pure Langevin Lorentzian 1 / (pi (1 + x^2)).
double atomic_spectral_density(double alpha, double x, double s0);

/// Light-only and Langevin-only pieces of the density above (S0 = 1 weight
/// for the light piece).
double atomic_light_transfer(double alpha, double x);
double atomic_langevin_density(double alpha, double x);

struct SpectralOptions {
  double tol = 1e-9;  // absolute, on each integrated part
  std::size_t max_evaluations = 400000;
};

/// Frequency-integrated NoiseReport. gamma only enters through
/// b = gamma_q / gamma for the Lorentzian model.
NoiseReport variance_spectral(double alpha, const SqueezingModel& model,
                              double gamma, const SpectralOptions& options = {});

struct CurvePoint {
  double alpha = 0.0;
  std::optional<double> eta;
};

/// Tabulates eta over a sorted nonnegative grid. Flat models use the closed
/// form, Lorentzian models the spectral integral. Points are evaluated in
/// parallel; output order follows the grid.
std::vector<CurvePoint> efficiency_curve(std::span<const double> alpha_grid,
                                         const SqueezingModel& model,
                                         double gamma,
                                         const SpectralOptions& options = {});

/// n points log-spaced on [lo, hi], endpoints included.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace qmem::mapping
