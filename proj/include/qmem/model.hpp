#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qmem::model {

// Physical constants, SI.
inline constexpr double kSpeedOfLight = 299792458.0;       // m/s
inline constexpr double kHbar = 1.054571817e-34;           // J s

/// Geometry and dark decoherence of the atomic sample.
struct MediumParams {
  double density = 0.0;         // n [1/m^3]
  double length = 0.0;          // L [m]
  double area = 0.0;            // A [m^2]
  double gamma0 = 0.0;          // dark decoherence rate [1/s]
  double wavelength = 0.0;      // optical wavelength [m]

  /// Throws ConfigError unless every field is strictly positive and finite.
  void validate() const;
  double fresnel_number() const { return area / (wavelength * length); }
  double column_density() const { return density * length; }
};

/// One constant-power stretch of the strong-field envelope |E_s(tau)|^2.
struct DriveSegment {
  double duration = 0.0;        // [s]
  double relative_power = 1.0;  // multiplies the coupling density g
};

/// Classical drive. `coupling` is g = kappa1* kappa2 |E_s|^2 at relative
/// power 1. An empty profile means the drive stays on at full power.
struct DriveParams {
  double coupling = 0.0;        // g [1/(m s)]
  double gamma_s = 0.0;         // power broadening [1/s]
  double tau_pulse = 0.0;       // [s]
  std::vector<DriveSegment> profile;

  void validate() const;
};

/// Microscopic inputs for the cross sections and the feasibility chain.
struct AtomicPhysics {
  double omega = 0.0;               // optical angular frequency [rad/s]
  double detuning = 0.0;            // one-photon detuning Delta_i [1/s]
  double gamma_i = 0.0;             // upper-level width [1/s]
  double dipole_sum = 0.0;          // sum_i mu_1i mu_3i [C^2 m^2]
  double saturation = 0.0;          // S = I_s / I_sat
  double gamma_q = 0.0;             // quantum-field bandwidth [1/s]
  double wavevector_mismatch = 0.0; // k_q - k_s [1/m]

  void validate() const;
  double wavelength() const;
};

/// Gamma0 + Gamma_s while the drive is on, Gamma0 once it is off.
double total_dephasing(const MediumParams& medium, const DriveParams& drive,
                       bool drive_on);

/// alpha = g L / Gamma with Gamma the on-drive total dephasing.
/// Throws DomainError when Gamma is zero.
double optical_depth(const MediumParams& medium, const DriveParams& drive);

/// (3 / 2 pi) lambda^2 n L, the resonant narrowband optical depth.
double resonant_depth_estimate(const MediumParams& medium);

// The four expressions below are written in Gaussian units in the source
// model. They take SI inputs, convert to CGS, evaluate the printed formula
// and convert the result back (1/s, W/m^2, m^2).

/// Gamma_s = omega^3 hbar |kappa1|^2 |E_s|^2 / (3 c^3).
/// kappa1 in SI is sum mu mu / (hbar^2 Delta) [C^2 m^2 / (J^2 s)], Es_sq [V^2/m^2].
double power_broadening(const AtomicPhysics& phys, double kappa1,
                        double es_sq);

/// kappa1 = dipole_sum / (hbar^2 Delta_i), SI.
double raman_coupling_kappa1(const AtomicPhysics& phys);

/// I_sat = omega^6 / (9 pi c^5) * dipole_sum  [W/m^2].
double saturation_intensity(const AtomicPhysics& phys);

/// sigma_R = (6 pi)^4 c^8 I_sat^2 / (2 Gamma_q S omega^11 hbar^3 Delta_i^2),
/// evaluated in CGS and reported with the cm^2 -> m^2 factor.
/// Throws DomainError for zero S, Gamma_q or Delta_i.
double raman_cross_section(const AtomicPhysics& phys);

/// sigma_2lev = 3 lambda^2 gamma_i^2 / (8 pi Delta_i^2) [m^2].
double two_level_cross_section(const AtomicPhysics& phys);

struct FeasibilityOptions {
  double ratio = 10.0;          // operational meaning of ">>"
  double fresnel_min = 0.3;
  double fresnel_max = 3.0;
};

struct FeasibilityCondition {
  std::string name;
  double left = 0.0;
  double right = 0.0;
  double required_ratio = 0.0;  // left/right must reach this; 0 for ranges
  bool pass = false;
};

struct FeasibilityReport {
  std::vector<FeasibilityCondition> conditions;
  bool overall_pass = false;
};

/// Evaluates the experimental inequality chain. Failures, including singular
/// inputs, are reported as failed conditions and never thrown.
FeasibilityReport check_feasibility(const MediumParams& medium,
                                    const DriveParams& drive,
                                    const AtomicPhysics& phys,
                                    const FeasibilityOptions& options = {});

}  // namespace qmem::model
