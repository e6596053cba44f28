#pragma once

#include <cstddef>
#include <vector>

#include "qmem/mapping.hpp"
#include "qmem/model.hpp"
#include "qmem/specfun.hpp"

namespace qmem::dynamics {

/// Accumulated drive area a(tau) = g * int_0^tau |E_s|^2 / |E_s,ref|^2 [1/m].
///
/// Stored as knots of a piecewise-linear function plus the slope that applies
/// after the last knot; exact for piecewise-constant drive envelopes.
class PulseArea {
 public:
  /// a(tau) = g tau for all tau >= 0.
  static PulseArea constant(double coupling);
  /// Drive switched off: a == 0.
  static PulseArea off();
  /// Piecewise-constant envelope; the drive is off after the last segment.
  static PulseArea from_profile(double coupling,
                                const std::vector<model::DriveSegment>& profile);
  static PulseArea from_drive(const model::DriveParams& drive);

  double at(double tau) const;
  /// Right derivative da/dtau.
  double rate(double tau) const;
  double max_rate() const;
  const std::vector<double>& knot_times() const { return times_; }

 private:
  PulseArea(std::vector<double> times, std::vector<double> values,
            double tail_slope);

  std::vector<double> times_;
  std::vector<double> values_;
  double tail_slope_;
};

/// e^{-Gamma tau} J0(2 sqrt(a(tau)(L - z'))): weight of the initial coherence
/// at z' in the collective spin.
double collective_initial_kernel(double z_prime, double tau,
                                 const PulseArea& area, double length,
                                 double gamma);

/// e^{-Gamma(tau - tau')} sqrt(L / du) J1(2 sqrt(du L)), du = a(tau) - a(tau'),
/// the weight of the input field at tau' in the collective spin at tau. The
/// du -> 0 limit is L. Requires tau' < tau.
double collective_light_kernel(double tau, double tau_prime,
                               const PulseArea& area, double length,
                               double gamma);

/// e^{-Gamma tau} J0(2 sqrt(a(tau)(L - z'))) integrated in squared form over
/// z' / L: the closed Lommel form J0(w)^2 + J1(w)^2 with w = 2 sqrt(a L).
double squared_j0_kernel_integral(double area_times_length);

struct TransientOptions {
  double tol = 1e-12;            // absolute, per one-dimensional integral
  double lorentzian_tol = 1e-9;  // nested integral for colored input
  std::size_t max_evaluations = 400000;
};

/// Collective-spin variance at retarded time tau, in units of nL, starting
/// from the atomic vacuum. Combines the decayed initial coherence, the
/// Langevin noise and the absorbed light. Lorentzian input uses a nested
/// quadrature over the exponential part of the correlator.
mapping::NoiseReport transient_variance(const PulseArea& area, double length,
                                        double gamma,
                                        const mapping::SqueezingModel& model,
                                        double tau,
                                        const TransientOptions& options = {});

/// Discretization of (z, tau). Accuracy bounds checked at run time:
/// g dtau dz <= 0.1 and Gamma dtau <= 0.5.
struct GridSpec {
  int nz = 200;
  int ntau = 200;
  double length = 1.0;   // [m]
  double tau_max = 1.0;  // [s]

  void validate() const;
};

/// Discretized Green functions from the grid oracle.
///
/// Dimensionless conventions: zeta = z/L, t = Gamma tau, and the collective
/// spin is normalized to unit vacuum variance.
struct KernelTable {
  int nz = 0;
  int ntau = 0;
  double dt = 0.0;                 // Gamma dtau
  std::vector<double> tau;         // [s], ntau + 1 entries
  std::vector<double> zeta;        // cell centres, nz entries
  /// Response of the collective spin at step k to a unit impulse of the input
  /// field in bin m, row-major (ntau + 1) x ntau. Zero for m >= k.
  std::vector<double> light;
  /// Weight of initial coherence at cell j in the collective spin at step k,
  /// row-major (ntau + 1) x nz.
  std::vector<double> initial;
  /// Local Green function p(zeta_j, t) per unit initial p(zeta_j') at t = 0
  /// and at the final step, row-major nz x nz, in units of 1/dzeta.
  std::vector<double> atomic_start;
  std::vector<double> atomic_final;
  /// Largest |coefficient| of the outgoing field at z = L on any input
  /// field bin that has not arrived yet; zero by construction.
  double acausal_max = 0.0;

  double light_at(int k, int m) const { return light[std::size_t(k) * ntau + m]; }
  double initial_at(int k, int j) const { return initial[std::size_t(k) * nz + j]; }
};

struct GridResult {
  KernelTable kernels;
  mapping::NoiseReport report;            // at tau_max
  std::vector<double> variance_trace;     // ntau + 1 entries
  std::vector<double> light_trace;
};

/// Propagates the linear Maxwell-Bloch system in retarded time on a grid.
///
/// Each step the input-field time bin crosses the sample cell by cell. In
/// every cell the field bin and the atomic cell mode exchange amplitude
/// through an exact rotation by theta = sqrt(dA * dzeta) (dA the
/// dimensionless area added during the step), then the atoms decay by
/// e^{-dt} with the matching Langevin variance 1 - e^{-2 dt}. The scheme is
/// first order in (dt, dzeta) and maps vacuum to vacuum exactly.
///
/// Second moments are exact for the discretization: field inputs are carried
/// as influence coefficients (one column per time bin), and the white atomic
/// noise (initial vacuum and Langevin increments) as its covariance, which is
/// the summed outer product of those influence coefficients.
GridResult simulate_grid(const PulseArea& area, double gamma,
                         const GridSpec& grid,
                         const mapping::SqueezingModel& model);

/// SI entry point: Gamma is the on-drive total dephasing, area from drive.
GridResult simulate_grid(const model::MediumParams& medium,
                         const model::DriveParams& drive, const GridSpec& grid,
                         const mapping::SqueezingModel& model);

/// Relative L2 distance between the grid light table and the analytic
/// collective_light_kernel (scaled by the coupling), over all k > m.
double light_kernel_error(const KernelTable& table, const PulseArea& area,
                          double length, double gamma);

/// Same for the initial-coherence table against collective_initial_kernel.
double initial_kernel_error(const KernelTable& table, const PulseArea& area,
                            double length, double gamma);

/// Observed order log2(e_coarse / e_fine) for consecutive halvings.
std::vector<double> observed_orders(const std::vector<double>& errors);

/// log(e_i / e_{i+1}) / log(n_{i+1} / n_i) for arbitrary refinement ratios.
std::vector<double> observed_orders(const std::vector<double>& errors,
                                    const std::vector<int>& sizes);

}  // namespace qmem::dynamics
