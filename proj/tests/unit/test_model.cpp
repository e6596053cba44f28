#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qmem/errors.hpp"
#include "qmem/model.hpp"

using namespace qmem;
using namespace qmem::model;

namespace {

MediumParams cesium_medium() {
  MediumParams m;
  m.density = 5.86616e15;
  m.length = 0.01;
  m.area = 8.52347e-9;
  m.gamma0 = 1.0;
  m.wavelength = 852.347e-9;
  return m;
}

DriveParams cesium_drive() {
  DriveParams d;
  d.coupling = 2.82638e8;
  d.gamma_s = 1.41318e5;
  d.tau_pulse = 0.01;
  return d;
}

AtomicPhysics cesium_physics() {
  AtomicPhysics p;
  p.omega = 2.0 * std::numbers::pi * kSpeedOfLight / 852.347e-9;
  p.detuning = 1e9;
  p.gamma_i = 3.28864e7;
  p.dipole_sum = 1.44172e-57;
  p.saturation = 4.0;
  p.gamma_q = 1e7;
  p.wavevector_mismatch = 0.0;
  return p;
}

const FeasibilityCondition& find(const FeasibilityReport& r, const std::string& name) {
  for (const auto& c : r.conditions) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no condition " + name);
}

}  // namespace

TEST(Dephasing, AdditiveModel) {
  MediumParams m = cesium_medium();
  DriveParams d = cesium_drive();
  d.gamma_s = 0.0;
  EXPECT_EQ(total_dephasing(m, d, true), 1.0);
  d.gamma_s = 99.0;
  EXPECT_EQ(total_dephasing(m, d, true), 100.0);
  EXPECT_EQ(total_dephasing(m, d, false), 1.0);
}

TEST(OpticalDepth, Definition) {
  MediumParams m = cesium_medium();
  DriveParams d = cesium_drive();
  d.coupling = 0.0;
  EXPECT_EQ(optical_depth(m, d), 0.0);
  d.gamma_s = 99.0;  // Gamma = 100
  d.coupling = 60.0 * 100.0 / m.length;
  EXPECT_NEAR(optical_depth(m, d), 60.0, 1e-12);
}

TEST(OpticalDepth, ZeroDephasingIsSingular) {
  MediumParams m = cesium_medium();
  m.gamma0 = 0.0;
  DriveParams d = cesium_drive();
  d.gamma_s = 0.0;
  EXPECT_THROW(optical_depth(m, d), DomainError);
}

TEST(OpticalDepth, InvariantUnderJointScaling) {
  MediumParams m = cesium_medium();
  DriveParams d = cesium_drive();
  const double a = optical_depth(m, d);
  m.gamma0 *= 4.0;
  d.gamma_s *= 4.0;
  d.coupling *= 4.0;
  EXPECT_EQ(optical_depth(m, d), a);
}

TEST(OpticalDepth, MatchesResonantEstimateForCesiumSample) {
  const MediumParams m = cesium_medium();
  EXPECT_NEAR(resonant_depth_estimate(m), 20.0, 0.5);
  EXPECT_NEAR(optical_depth(m, cesium_drive()), resonant_depth_estimate(m), 0.5);
  // 5e5 atoms in the sample.
  EXPECT_NEAR(m.density * m.area * m.length, 5e5, 1e2);
}

TEST(ResonantDepth, Inversion) {
  MediumParams m = cesium_medium();
  m.wavelength = 852e-9;
  const double nl = 2.0 * std::numbers::pi * 20.0 / (3.0 * m.wavelength * m.wavelength);
  m.length = 0.02;
  m.density = nl / m.length;
  EXPECT_NEAR(resonant_depth_estimate(m), 20.0, 1e-12);
  m.density = 0.0;
  EXPECT_EQ(resonant_depth_estimate(m), 0.0);
}

TEST(PowerBroadening, LinearInFieldIntensity) {
  const AtomicPhysics p = cesium_physics();
  const double k1 = raman_coupling_kappa1(p);
  EXPECT_EQ(power_broadening(p, k1, 0.0), 0.0);
  const double g1 = power_broadening(p, k1, 1e4);
  EXPECT_NEAR(power_broadening(p, k1, 2e4) / g1, 2.0, 1e-14);
  // Quadratic in |kappa1|, sign ignored.
  EXPECT_NEAR(power_broadening(p, -2.0 * k1, 1e4) / g1, 4.0, 1e-14);
  EXPECT_THROW(power_broadening(p, k1, -1.0), DomainError);
}

TEST(PowerBroadening, CesiumDriveAtSaturationFour) {
  const AtomicPhysics p = cesium_physics();
  const double isat = saturation_intensity(p);
  const double eps0 = 8.8541878128e-12;
  const double es_sq = 2.0 * p.saturation * isat / (eps0 * kSpeedOfLight);
  const double gs = power_broadening(p, raman_coupling_kappa1(p), es_sq);
  EXPECT_NEAR(gs, 1.41318e5, 1e1);
  EXPECT_GT(gs * cesium_drive().tau_pulse, 10.0);
}

TEST(CrossSections, SaturationIntensityOfCesium) {
  // Roughly the tabulated 11 W/m^2 (1.1 mW/cm^2) of the D2 cycling line.
  const double isat = saturation_intensity(cesium_physics());
  EXPECT_GT(isat, 5.0);
  EXPECT_LT(isat, 50.0);
}

TEST(CrossSections, TwoLevelScaling) {
  AtomicPhysics p = cesium_physics();
  const double s = two_level_cross_section(p);
  p.detuning *= 4.0;
  EXPECT_NEAR(two_level_cross_section(p) * 16.0 / s, 1.0, 1e-14);
  p.gamma_i = 0.0;
  EXPECT_EQ(two_level_cross_section(p), 0.0);
}

TEST(CrossSections, RamanHomogeneity) {
  const AtomicPhysics p = cesium_physics();
  const double s = raman_cross_section(p);
  EXPECT_GT(s, 0.0);
  AtomicPhysics q = p;
  q.gamma_q *= 3.0;
  EXPECT_NEAR(raman_cross_section(q) * 3.0 / s, 1.0, 1e-12);
  q = p;
  q.detuning *= 2.0;
  EXPECT_NEAR(raman_cross_section(q) * 4.0 / s, 1.0, 1e-12);
  q = p;
  q.dipole_sum *= 2.0;  // I_sat doubles, sigma_R goes as I_sat^2
  EXPECT_NEAR(raman_cross_section(q) / (4.0 * s), 1.0, 1e-12);
  q = p;
  q.saturation *= 2.0;
  EXPECT_NEAR(raman_cross_section(q) * 2.0 / s, 1.0, 1e-12);
}

TEST(CrossSections, SingularInputs) {
  AtomicPhysics p = cesium_physics();
  p.saturation = 0.0;
  EXPECT_THROW(raman_cross_section(p), DomainError);
  p = cesium_physics();
  p.gamma_q = 0.0;
  EXPECT_THROW(raman_cross_section(p), DomainError);
}

TEST(Validation, RejectsNonPositive) {
  MediumParams m = cesium_medium();
  m.length = 0.0;
  EXPECT_THROW(m.validate(), ConfigError);
  DriveParams d = cesium_drive();
  d.tau_pulse = 0.0;
  EXPECT_THROW(d.validate(), ConfigError);
  d = cesium_drive();
  d.profile.push_back({1e-3, -1.0});
  EXPECT_THROW(d.validate(), ConfigError);
  AtomicPhysics p = cesium_physics();
  p.gamma_q = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  EXPECT_NO_THROW(cesium_medium().validate());
  EXPECT_NO_THROW(cesium_drive().validate());
  EXPECT_NO_THROW(cesium_physics().validate());
}

TEST(Feasibility, ConditionListAndConjunction) {
  const auto r = check_feasibility(cesium_medium(), cesium_drive(), cesium_physics());
  ASSERT_EQ(r.conditions.size(), 8u);
  bool all = true;
  for (const auto& c : r.conditions) all = all && c.pass;
  EXPECT_EQ(r.overall_pass, all);
  EXPECT_TRUE(find(r, "Delta >> Gamma_q").pass);
  EXPECT_TRUE(find(r, "Delta >> Gamma_s").pass);
  EXPECT_TRUE(find(r, "Delta >> gamma_i").pass);
  EXPECT_TRUE(find(r, "Gamma_s >> 1/tau_pulse").pass);
  EXPECT_TRUE(find(r, "Gamma_q >> 1/tau_pulse").pass);
  EXPECT_TRUE(find(r, "1 >> |k_q - k_s| L").pass);
  EXPECT_TRUE(find(r, "Fresnel number in range").pass);
}

TEST(Feasibility, ShortPulseBreaksBandwidthCondition) {
  DriveParams d = cesium_drive();
  d.tau_pulse = 1e-9;
  const auto r = check_feasibility(cesium_medium(), d, cesium_physics());
  EXPECT_FALSE(find(r, "Gamma_q >> 1/tau_pulse").pass);
  EXPECT_FALSE(find(r, "Gamma_s >> 1/tau_pulse").pass);
  EXPECT_FALSE(r.overall_pass);
}

TEST(Feasibility, ZeroedRatesFailExpectedSubset) {
  DriveParams d = cesium_drive();
  d.gamma_s = 0.0;
  const auto r = check_feasibility(cesium_medium(), d, cesium_physics());
  // Delta >> 0 holds; 0 >> 1/tau does not.
  EXPECT_TRUE(find(r, "Delta >> Gamma_s").pass);
  EXPECT_FALSE(find(r, "Gamma_s >> 1/tau_pulse").pass);
  EXPECT_TRUE(find(r, "Gamma_q >> 1/tau_pulse").pass);
}

TEST(Feasibility, RatioAndFresnelAreConfigurable) {
  FeasibilityOptions o;
  o.ratio = 1e3;
  const auto r = check_feasibility(cesium_medium(), cesium_drive(), cesium_physics(), o);
  EXPECT_FALSE(find(r, "Delta >> gamma_i").pass);  // ratio ~30
  EXPECT_TRUE(find(r, "Delta >> Gamma_s").pass);
  o = {};
  o.fresnel_min = 2.0;
  const auto f = check_feasibility(cesium_medium(), cesium_drive(), cesium_physics(), o);
  EXPECT_FALSE(find(f, "Fresnel number in range").pass);
}

TEST(Feasibility, PhaseMismatch) {
  AtomicPhysics p = cesium_physics();
  p.wavevector_mismatch = 1.0;  // |dk| L = 0.01
  EXPECT_TRUE(find(check_feasibility(cesium_medium(), cesium_drive(), p),
                   "1 >> |k_q - k_s| L")
                  .pass);
  p.wavevector_mismatch = -50.0;  // 0.5
  EXPECT_FALSE(find(check_feasibility(cesium_medium(), cesium_drive(), p),
                    "1 >> |k_q - k_s| L")
                   .pass);
}
