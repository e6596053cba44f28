#include "qmem/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qmem/errors.hpp"

namespace qmem::model {
namespace {

using std::numbers::pi;

// SI -> Gaussian conversion factors.
constexpr double kCgsLight = kSpeedOfLight * 1e2;             // cm/s
constexpr double kCgsHbar = kHbar * 1e7;                      // erg s
constexpr double kDipoleToCgs = 2.99792458e9 * 1e2;           // C m -> statC cm
constexpr double kFieldToCgs = 1.0 / 2.99792458e4;            // V/m -> statV/cm
constexpr double kIntensityToSi = 1e-3;                       // erg/(s cm^2) -> W/m^2
constexpr double kAreaToSi = 1e-4;                            // cm^2 -> m^2

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void MediumParams::validate() const {
  require(positive(density), "medium.density must be > 0");
  require(positive(length), "medium.length must be > 0");
  require(positive(area), "medium.area must be > 0");
  require(positive(gamma0), "medium.gamma0 must be > 0");
  require(positive(wavelength), "medium.wavelength must be > 0");
}

void DriveParams::validate() const {
  require(nonneg(coupling), "drive.coupling must be >= 0");
  require(nonneg(gamma_s), "drive.gamma_s must be >= 0");
  require(positive(tau_pulse), "drive.tau_pulse must be > 0");
  for (const auto& seg : profile) {
    require(positive(seg.duration), "drive.profile durations must be > 0");
    require(nonneg(seg.relative_power),
            "drive.profile powers must be >= 0");
  }
}

void AtomicPhysics::validate() const {
  require(positive(omega), "physics.omega must be > 0");
  require(positive(detuning), "physics.detuning must be > 0");
  require(positive(gamma_i), "physics.gamma_i must be > 0");
  require(positive(gamma_q), "physics.gamma_q must be > 0");
  require(nonneg(saturation), "physics.saturation must be >= 0");
  require(nonneg(dipole_sum), "physics.dipole_sum must be >= 0");
  require(std::isfinite(wavevector_mismatch),
          "physics.wavevector_mismatch must be finite");
}

double AtomicPhysics::wavelength() const {
  return 2.0 * pi * kSpeedOfLight / omega;
}

double total_dephasing(const MediumParams& medium, const DriveParams& drive,
                       bool drive_on) {
  return drive_on ? medium.gamma0 + drive.gamma_s : medium.gamma0;
}

double optical_depth(const MediumParams& medium, const DriveParams& drive) {
  const double gamma = total_dephasing(medium, drive, true);
  if (!(gamma > 0.0)) {
    throw DomainError("optical_depth: total dephasing rate is zero");
  }
  return drive.coupling * medium.length / gamma;
}

double resonant_depth_estimate(const MediumParams& medium) {
  return 3.0 / (2.0 * pi) * medium.wavelength * medium.wavelength *
         medium.density * medium.length;
}

double raman_coupling_kappa1(const AtomicPhysics& phys) {
  if (!(phys.detuning > 0.0)) {
    throw DomainError("raman_coupling_kappa1: detuning must be > 0");
  }
  return phys.dipole_sum / (kHbar * kHbar * phys.detuning);
}

double power_broadening(const AtomicPhysics& phys, double kappa1,
                        double es_sq) {
  if (!(es_sq >= 0.0)) throw DomainError("power_broadening: |E_s|^2 < 0");
  // kappa1 carries dipole^2 / hbar^2; convert both factors.
  const double kappa1_cgs =
      std::abs(kappa1) * kDipoleToCgs * kDipoleToCgs / (1e7 * 1e7);
  const double es_sq_cgs = es_sq * kFieldToCgs * kFieldToCgs;
  const double w = phys.omega;
  return w * w * w * kCgsHbar * kappa1_cgs * kappa1_cgs * es_sq_cgs /
         (3.0 * kCgsLight * kCgsLight * kCgsLight);
}

double saturation_intensity(const AtomicPhysics& phys) {
  const double dsum_cgs = phys.dipole_sum * kDipoleToCgs * kDipoleToCgs;
  const double w3 = phys.omega * phys.omega * phys.omega;
  const double c5 = std::pow(kCgsLight, 5);
  return w3 * w3 / (9.0 * pi * c5) * dsum_cgs * kIntensityToSi;
}

double raman_cross_section(const AtomicPhysics& phys) {
  if (!(phys.saturation > 0.0)) {
    throw DomainError("raman_cross_section: saturation parameter is zero");
  }
  if (!(phys.gamma_q > 0.0)) {
    throw DomainError("raman_cross_section: quantum bandwidth is zero");
  }
  if (!(phys.detuning > 0.0)) {
    throw DomainError("raman_cross_section: detuning is zero");
  }
  const double isat_cgs = saturation_intensity(phys) / kIntensityToSi;
  if (isat_cgs == 0.0) return 0.0;
  // Work in logs: c^8 and omega^11 alone leave double range in CGS.
  const double log_num = 4.0 * std::log(6.0 * pi) + 8.0 * std::log(kCgsLight) +
                         2.0 * std::log(isat_cgs);
  const double log_den = std::log(2.0 * phys.gamma_q * phys.saturation) +
                         11.0 * std::log(phys.omega) +
                         3.0 * std::log(kCgsHbar) +
                         2.0 * std::log(phys.detuning);
  return std::exp(log_num - log_den) * kAreaToSi;
}

double two_level_cross_section(const AtomicPhysics& phys) {
  if (!(phys.detuning > 0.0)) {
    throw DomainError("two_level_cross_section: detuning is zero");
  }
  const double lambda = phys.wavelength();
  const double ratio = phys.gamma_i / phys.detuning;
  return 3.0 * lambda * lambda * ratio * ratio / (8.0 * pi);
}

FeasibilityReport check_feasibility(const MediumParams& medium,
                                    const DriveParams& drive,
                                    const AtomicPhysics& phys,
                                    const FeasibilityOptions& options) {
  FeasibilityReport report;
  auto much_greater = [&](std::string name, double left, double right) {
    FeasibilityCondition c{std::move(name), left, right, options.ratio, false};
    if (std::isfinite(left) && left > 0.0 && std::isfinite(right) &&
        right >= 0.0) {
      c.pass = right == 0.0 || left / right >= options.ratio;
    }
    report.conditions.push_back(std::move(c));
  };

  const double inv_pulse =
      drive.tau_pulse > 0.0 ? 1.0 / drive.tau_pulse
                            : std::numeric_limits<double>::infinity();

  much_greater("Delta >> Gamma_q", phys.detuning, phys.gamma_q);
  much_greater("Delta >> Gamma_s", phys.detuning, drive.gamma_s);
  much_greater("Delta >> gamma_i", phys.detuning, phys.gamma_i);

  double sigma_r = std::numeric_limits<double>::quiet_NaN();
  double sigma_2 = std::numeric_limits<double>::quiet_NaN();
  try {
    sigma_r = raman_cross_section(phys);
    sigma_2 = two_level_cross_section(phys);
  } catch (const DomainError&) {
    // reported as a failed condition below
  }
  much_greater("sigma_R >> sigma_2level", sigma_r, sigma_2);
  much_greater("Gamma_s >> 1/tau_pulse", drive.gamma_s, inv_pulse);
  much_greater("Gamma_q >> 1/tau_pulse", phys.gamma_q, inv_pulse);
  much_greater("1 >> |k_q - k_s| L", 1.0,
               std::abs(phys.wavevector_mismatch) * medium.length);

  FeasibilityCondition fresnel{"Fresnel number in range",
                               medium.fresnel_number(), options.fresnel_max,
                               0.0, false};
  fresnel.pass = std::isfinite(fresnel.left) &&
                 fresnel.left >= options.fresnel_min &&
                 fresnel.left <= options.fresnel_max;
  report.conditions.push_back(fresnel);

  report.overall_pass = true;
  for (const auto& c : report.conditions) {
    report.overall_pass = report.overall_pass && c.pass;
  }
  return report;
}

}  // namespace qmem::model
