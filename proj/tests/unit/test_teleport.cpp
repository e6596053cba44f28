#include <cmath>

#include <gtest/gtest.h>

#include "qmem/errors.hpp"
#include "qmem/teleport.hpp"

using namespace qmem;
using namespace qmem::teleport;

namespace {

TwoModeGaussian sample_state() {
  TwoModeGaussian g;
  g.mean = {0.3, -1.2, 2.0, 0.7};
  const double c[4][4] = {{1.5, 0.2, 0.1, 0.0},
                          {0.2, 0.8, 0.0, -0.3},
                          {0.1, 0.0, 2.2, 0.4},
                          {0.0, -0.3, 0.4, 0.6}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g.cov[i][j] = c[i][j];
  return g;
}

}  // namespace

TEST(Coupling, SquareRootOfPulseDepth) {
  auto r = coupling_r(0.0);
  EXPECT_EQ(r.r, 0.0);
  EXPECT_TRUE(r.valid);
  r = coupling_r(0.01);
  EXPECT_NEAR(r.r, 0.1, 1e-16);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.epr_requirement, r.r);
  r = coupling_r(1.0);
  EXPECT_EQ(r.r, 1.0);
  EXPECT_FALSE(r.valid);
  EXPECT_TRUE(coupling_r(0.09).valid);
  EXPECT_FALSE(coupling_r(0.0901).valid);
  EXPECT_TRUE(coupling_r(0.25, 0.5).valid);
  EXPECT_THROW(coupling_r(-0.1), DomainError);
}

TEST(Coupling, SquareRecoversDepth) {
  for (double a : {0.0, 1e-6, 0.0123, 0.09, 0.5, 7.0}) {
    const double r = coupling_r(a).r;
    EXPECT_DOUBLE_EQ(r * r, a);  // to rounding of the square root
  }
}

TEST(BeamSplitter, ZeroCouplingIsIdentity) {
  const auto s = sample_state();
  const auto out = apply_linear_bs(s, 0.0);
  EXPECT_EQ(out.mean, s.mean);
  EXPECT_EQ(out.cov, s.cov);
}

TEST(BeamSplitter, VacuumVariancesGrowByRSquared) {
  for (double r : {0.05, 0.1, 0.3, 0.5}) {
    const auto out = apply_linear_bs(TwoModeGaussian::vacuum(), r);
    for (int i = 0; i < 4; ++i) {
      EXPECT_NEAR(out.cov[i][i], 1.0 + r * r, 1e-15);
      for (int j = 0; j < 4; ++j) {
        if (i != j) EXPECT_NEAR(out.cov[i][j], 0.0, 1e-15);
      }
    }
  }
}

TEST(BeamSplitter, ActsAsMinusIRTheta) {
  // q = 1 + 0i, theta = 0 -> theta_out = -i r q = -i r.
  TwoModeGaussian s = TwoModeGaussian::vacuum();
  s.mean = {1.0, 0.0, 0.0, 0.0};
  const auto out = apply_linear_bs(s, 0.2);
  EXPECT_NEAR(out.mean[0], 1.0, 1e-16);
  EXPECT_NEAR(out.mean[1], 0.0, 1e-16);
  EXPECT_NEAR(out.mean[2], 0.0, 1e-16);
  EXPECT_NEAR(out.mean[3], -0.2, 1e-16);
}

TEST(BeamSplitter, SwapSymmetry) {
  const auto s = sample_state();
  TwoModeGaussian swapped;
  const int p[4] = {2, 3, 0, 1};
  for (int i = 0; i < 4; ++i) {
    swapped.mean[i] = s.mean[p[i]];
    for (int j = 0; j < 4; ++j) swapped.cov[i][j] = s.cov[p[i]][p[j]];
  }
  const auto a = apply_linear_bs(s, 0.17);
  const auto b = apply_linear_bs(swapped, 0.17);
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(b.mean[i], a.mean[p[i]], 1e-15);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(b.cov[i][j], a.cov[p[i]][p[j]], 1e-15);
  }
}

TEST(BeamSplitter, ReversibleToSecondOrder) {
  const auto s = sample_state();
  for (double r : {0.01, 0.02, 0.04}) {
    // Undo with the opposite coupling, I - r G.
    const TwoModeGaussian fwd = apply_linear_bs(s, r);
    const auto m = linear_bs_matrix(r);
    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      double v = 0.0;
      for (int k = 0; k < 4; ++k) v += (2.0 * (i == k) - m[i][k]) * fwd.mean[k];
      err = std::max(err, std::abs(v - s.mean[i]));
    }
    // (I - rG)(I + rG) = (1 + r^2) I
    double norm = 0.0;
    for (double x : s.mean) norm = std::max(norm, std::abs(x));
    EXPECT_NEAR(err, r * r * norm, 1e-14);
  }
  EXPECT_THROW(apply_linear_bs(s, -0.1), DomainError);
}

TEST(BeamSplitter, OutputCovarianceSymmetric) {
  const auto out = apply_linear_bs(sample_state(), 0.3);
  EXPECT_NO_THROW(out.validate());
  TwoModeGaussian bad = sample_state();
  bad.cov[0][1] = 5.0;
  EXPECT_THROW(bad.validate(), DomainError);
  bad = sample_state();
  bad.cov[2][2] = -1.0;
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(CommutatorDefect, ExactlyQuadratic) {
  EXPECT_EQ(commutator_defect(0.0), 0.0);
  EXPECT_NEAR(commutator_defect(0.1), 0.01, 1e-12);
  for (double r = 0.0; r <= 0.5; r += 0.01) {
    EXPECT_NEAR(commutator_defect(r), r * r, 1e-12) << r;
  }
  for (double r : {1e-2, 1e-3, 1e-4}) {
    EXPECT_NEAR(commutator_defect(2 * r) / commutator_defect(r), 4.0, 1e-12);
  }
  EXPECT_NEAR(coupling_r(0.04).commutator_defect, 0.04, 1e-15);
}

TEST(NoiseBudget, StrictInequality) {
  auto b = readout_noise_budget(0.2, 0.0);
  EXPECT_TRUE(b.pass);
  EXPECT_EQ(b.ratio, 0.0);
  EXPECT_EQ(b.classical_baseline, 1.0);
  b = readout_noise_budget(0.2, 0.2);
  EXPECT_FALSE(b.pass);
  EXPECT_EQ(b.ratio, 1.0);
  b = readout_noise_budget(0.2, 0.1);
  EXPECT_TRUE(b.pass);
  EXPECT_NEAR(b.ratio, 0.5, 1e-16);
  EXPECT_FALSE(readout_noise_budget(0.2, 0.3).pass);
  for (double e : {0.0, 0.1, 2.0}) EXPECT_FALSE(readout_noise_budget(0.0, e).pass);
  EXPECT_THROW(readout_noise_budget(0.1, -1.0), DomainError);
}
