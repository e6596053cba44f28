#include <cmath>

#include <gtest/gtest.h>

#include "qmem/dynamics.hpp"
#include "qmem/errors.hpp"

using namespace qmem;
using namespace qmem::dynamics;
using mapping::SqueezingModel;

namespace {

GridSpec square(int n, double tau_max) {
  GridSpec g;
  g.nz = n;
  g.ntau = n;
  g.length = 1.0;
  g.tau_max = tau_max;
  return g;
}

}  // namespace

TEST(GridSpec, Validation) {
  GridSpec g = square(1, 1.0);
  EXPECT_THROW(g.validate(), ConfigError);
  g = square(10, 0.0);
  EXPECT_THROW(g.validate(), ConfigError);
  g = square(10, 1.0);
  g.length = -1.0;
  EXPECT_THROW(g.validate(), ConfigError);
  EXPECT_NO_THROW(square(2, 1.0).validate());
}

TEST(Grid, StabilityBoundsAreEnforced) {
  const auto vac = SqueezingModel::flat(1.0);
  // g dtau dz = 100 * 0.1 * 0.1 = 1
  EXPECT_THROW(simulate_grid(PulseArea::constant(100.0), 1.0, square(10, 1.0), vac),
               ConfigError);
  // Gamma dtau = 1
  EXPECT_THROW(simulate_grid(PulseArea::constant(1.0), 1.0, square(10, 10.0), vac),
               ConfigError);
  EXPECT_THROW(simulate_grid(PulseArea::constant(1.0), 0.0, square(10, 1.0), vac),
               ConfigError);
  EXPECT_NO_THROW(
      simulate_grid(PulseArea::constant(10.0), 1.0, square(10, 1.0), vac));
}

TEST(Grid, VacuumPassthrough) {
  for (double alpha : {0.0, 0.5, 5.0, 50.0}) {
    const auto r = simulate_grid(PulseArea::constant(alpha), 1.0, square(200, 10.0),
                                 SqueezingModel::flat(1.0));
    EXPECT_NEAR(r.report.variance_norm, 1.0, 5e-3) << alpha;
    // The rotation scheme keeps vacuum to rounding.
    EXPECT_NEAR(r.report.variance_norm, 1.0, 1e-12) << alpha;
    for (double v : r.variance_trace) EXPECT_NEAR(v, 1.0, 1e-12);
  }
}

TEST(Grid, UncoupledSystem) {
  const auto r = simulate_grid(PulseArea::off(), 1.0, square(20, 2.0),
                               SqueezingModel::flat(0.0));
  const auto& k = r.kernels;
  for (int step = 0; step <= k.ntau; ++step) {
    for (int j = 0; j < k.nz; ++j) {
      EXPECT_NEAR(k.initial_at(step, j), std::exp(-k.tau[step]), 1e-14);
    }
    for (int m = 0; m < k.ntau; ++m) EXPECT_EQ(k.light_at(step, m), 0.0);
  }
  for (int i = 0; i < k.nz; ++i) {
    for (int j = 0; j < k.nz; ++j) {
      const double expect = i == j ? std::exp(-2.0) * k.nz : 0.0;
      EXPECT_NEAR(k.atomic_final[i * k.nz + j], expect, 1e-12);
    }
  }
  EXPECT_NEAR(r.report.variance_norm, 1.0, 1e-14);
  EXPECT_EQ(r.report.light_part, 0.0);
}

TEST(Grid, TablesStartAtIdentity) {
  const auto r = simulate_grid(PulseArea::constant(2.0), 1.0, square(16, 1.0),
                               SqueezingModel::flat(0.0));
  const auto& k = r.kernels;
  for (int i = 0; i < k.nz; ++i) {
    EXPECT_EQ(k.initial_at(0, i), 1.0);
    for (int j = 0; j < k.nz; ++j) {
      EXPECT_EQ(k.atomic_start[i * k.nz + j], i == j ? double(k.nz) : 0.0);
    }
  }
  EXPECT_EQ(r.variance_trace.front(), 1.0);
  EXPECT_EQ(r.variance_trace.size(), std::size_t(k.ntau + 1));
}

TEST(Grid, Causality) {
  const auto r = simulate_grid(PulseArea::constant(3.0), 1.0, square(40, 2.0),
                               SqueezingModel::flat(0.0));
  const auto& k = r.kernels;
  EXPECT_EQ(k.acausal_max, 0.0);
  for (int step = 0; step <= k.ntau; ++step) {
    for (int m = step; m < k.ntau; ++m) EXPECT_EQ(k.light_at(step, m), 0.0);
  }
}

TEST(Grid, LightKernelConvergesAtFirstOrder) {
  const auto area = PulseArea::constant(1.0);
  std::vector<double> errors;
  for (int n : {50, 100, 200, 400}) {
    const auto r = simulate_grid(area, 1.0, square(n, 1.0), SqueezingModel::flat(1.0));
    errors.push_back(light_kernel_error(r.kernels, area, 1.0, 1.0));
  }
  for (std::size_t i = 1; i < errors.size(); ++i) EXPECT_LT(errors[i], errors[i - 1]);
  for (double p : observed_orders(errors)) {
    EXPECT_GE(p, 0.8);
    EXPECT_LE(p, 1.2);
  }
  EXPECT_LE(errors.back(), 1e-3);
}

TEST(Grid, InitialKernelConverges) {
  const auto area = PulseArea::constant(4.0);
  std::vector<double> errors;
  for (int n : {25, 50, 100}) {
    const auto r = simulate_grid(area, 1.0, square(n, 2.0), SqueezingModel::flat(1.0));
    errors.push_back(initial_kernel_error(r.kernels, area, 1.0, 1.0));
  }
  EXPECT_LT(errors[1], errors[0]);
  EXPECT_LT(errors[2], errors[1]);
  EXPECT_LT(errors.back(), 1e-3);
}

TEST(Grid, VarianceConvergesToTransient) {
  const auto area = PulseArea::constant(5.0);
  const auto m = SqueezingModel::flat(0.0);
  const double exact = transient_variance(area, 1.0, 1.0, m, 10.0).variance_norm;
  std::vector<double> errors;
  for (int n : {40, 80, 160, 320}) {
    const auto r = simulate_grid(area, 1.0, square(n, 10.0), m);
    errors.push_back(std::abs(r.report.variance_norm - exact));
  }
  for (double p : observed_orders(errors)) {
    EXPECT_GE(p, 0.8);
    EXPECT_LE(p, 1.2);
  }
}

TEST(Grid, ColoredInputConvergesToTransient) {
  const auto area = PulseArea::constant(2.0);
  const auto m = SqueezingModel::lorentzian(10.0, 1.0);
  const double exact = transient_variance(area, 1.0, 1.0, m, 4.0).variance_norm;
  double prev = 1.0;
  for (int n : {40, 80, 160}) {
    const auto r = simulate_grid(area, 1.0, square(n, 4.0), m);
    const double err = std::abs(r.report.variance_norm - exact);
    EXPECT_LT(err, prev) << n;
    prev = err;
  }
  EXPECT_LT(prev, 2e-2);
}

TEST(Grid, PulsedDriveKernel) {
  // Drive on at double power for half the window, then off.
  const auto area = PulseArea::from_profile(1.0, {{0.5, 2.0}});
  std::vector<double> errors;
  for (int n : {50, 100, 200}) {
    const auto r = simulate_grid(area, 1.0, square(n, 1.0), SqueezingModel::flat(0.0));
    errors.push_back(light_kernel_error(r.kernels, area, 1.0, 1.0));
    const auto tr = transient_variance(area, 1.0, 1.0, SqueezingModel::flat(0.0), 1.0);
    EXPECT_NEAR(r.report.variance_norm, tr.variance_norm, 20.0 / n);
  }
  EXPECT_LT(errors[1], errors[0]);
  EXPECT_LT(errors[2], errors[1]);
}

TEST(Grid, PhysicalUnitsEntryPoint) {
  model::MediumParams medium;
  medium.density = 1e16;
  medium.length = 0.02;
  medium.area = 1e-8;
  medium.gamma0 = 10.0;
  medium.wavelength = 852e-9;
  model::DriveParams drive;
  drive.gamma_s = 990.0;                       // Gamma = 1000 / s
  drive.coupling = 3.0 * 1000.0 / medium.length;  // alpha = 3
  drive.tau_pulse = 1e-2;
  GridSpec g;
  g.nz = 60;
  g.ntau = 60;
  g.length = medium.length;
  g.tau_max = 5e-3;  // Gamma tau = 5
  const auto si = simulate_grid(medium, drive, g, SqueezingModel::flat(0.0));
  const auto dimless = simulate_grid(PulseArea::constant(3.0), 1.0, square(60, 5.0),
                                     SqueezingModel::flat(0.0));
  EXPECT_NEAR(si.report.variance_norm, dimless.report.variance_norm, 1e-12);
  g.length = 0.03;
  EXPECT_THROW(simulate_grid(medium, drive, g, SqueezingModel::flat(0.0)), ConfigError);
}

TEST(Grid, Deterministic) {
  const auto area = PulseArea::constant(2.0);
  const auto m = SqueezingModel::lorentzian(5.0, 0.8);
  const auto a = simulate_grid(area, 1.0, square(30, 3.0), m);
  const auto b = simulate_grid(area, 1.0, square(30, 3.0), m);
  EXPECT_EQ(a.variance_trace, b.variance_trace);
  EXPECT_EQ(a.kernels.light, b.kernels.light);
}

TEST(Grid, ObservedOrders) {
  const auto p = observed_orders({0.4, 0.2, 0.05});
  ASSERT_EQ(p.size(), 2u);
  EXPECT_DOUBLE_EQ(p[0], 1.0);
  EXPECT_DOUBLE_EQ(p[1], 2.0);
  const auto q = observed_orders({0.9, 0.1}, {10, 30});
  EXPECT_NEAR(q[0], 2.0, 1e-15);
  EXPECT_THROW(observed_orders({1.0}, {1, 2}), DomainError);
}
