#pragma once

#include <array>

namespace qmem::teleport {

/// Quadrature order: (Re q, Im q, Re theta, Im theta), where q is the
/// rescaled atomic mode and theta the field area mode. Vacuum covariance is
/// the identity in these units.
struct TwoModeGaussian {
  std::array<double, 4> mean{};
  std::array<std::array<double, 4>, 4> cov{};

  static TwoModeGaussian vacuum();
  /// Throws DomainError for an asymmetric matrix or a negative diagonal.
  void validate() const;
};

struct BsReport {
  double r = 0.0;
  bool valid = true;
  double epr_requirement = 0.0;
  double commutator_defect = 0.0;
};

/// r = sqrt(alpha_pulse); valid while r <= threshold.
BsReport coupling_r(double alpha_pulse, double threshold = 0.3);

/// q_out = q_in - i r theta_in, theta_out = theta_in - i r q_in, acting on
/// the real quadratures. Not symplectic for r > 0.
std::array<std::array<double, 4>, 4> linear_bs_matrix(double r);
TwoModeGaussian apply_linear_bs(const TwoModeGaussian& state, double r);

/// ||M J M^T - J|| / ||J|| (Frobenius) with J the symplectic form; this
/// equals r^2 for the linear map.
double commutator_defect(double r);

struct NoiseBudget {
  double r = 0.0;
  double epr_residual = 0.0;
  bool pass = false;
  double ratio = 0.0;                // epr_residual / r, inf at r = 0
  double classical_baseline = 1.0;   // one vacuum unit
};

NoiseBudget readout_noise_budget(double r, double epr_residual);

}  // namespace qmem::teleport
