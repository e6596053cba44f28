#include "qmem/teleport.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qmem/errors.hpp"

namespace qmem::teleport {
namespace {

using Mat = std::array<std::array<double, 4>, 4>;

Mat multiply(const Mat& a, const Mat& b) {
  Mat c{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat transpose(const Mat& a) {
  Mat t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i][j] = a[j][i];
  return t;
}

// Two independent modes, each (x, p) with [x, p] = i.
Mat symplectic_form() {
  Mat j{};
  j[0][1] = 1.0;
  j[1][0] = -1.0;
  j[2][3] = 1.0;
  j[3][2] = -1.0;
  return j;
}

// -i acting on x + i p gives (p, -x); the map is I + r G.
Mat generator() {
  Mat g{};
  g[0][3] = 1.0;
  g[1][2] = -1.0;
  g[2][1] = 1.0;
  g[3][0] = -1.0;
  return g;
}

void require_r(double r, const char* where) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(where) + ": r must be >= 0");
  }
}

}  // namespace

TwoModeGaussian TwoModeGaussian::vacuum() {
  TwoModeGaussian g;
  for (int i = 0; i < 4; ++i) g.cov[i][i] = 1.0;
  return g;
}

void TwoModeGaussian::validate() const {
  for (int i = 0; i < 4; ++i) {
    if (!(cov[i][i] >= 0.0)) {
      throw DomainError("TwoModeGaussian: negative variance");
    }
    for (int j = 0; j < i; ++j) {
      if (cov[i][j] != cov[j][i]) {
        throw DomainError("TwoModeGaussian: covariance not symmetric");
      }
    }
  }
}

BsReport coupling_r(double alpha_pulse, double threshold) {
  if (!(alpha_pulse >= 0.0)) {
    throw DomainError("coupling_r: alpha_pulse must be >= 0");
  }
  BsReport rep;
  rep.r = std::sqrt(alpha_pulse);
  rep.valid = rep.r <= threshold;
  rep.epr_requirement = rep.r;
  rep.commutator_defect = commutator_defect(rep.r);
  return rep;
}

Mat linear_bs_matrix(double r) {
  const Mat g = generator();
  Mat m{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m[i][j] = (i == j ? 1.0 : 0.0) + r * g[i][j];
  }
  return m;
}

TwoModeGaussian apply_linear_bs(const TwoModeGaussian& state, double r) {
  require_r(r, "apply_linear_bs");
  if (r == 0.0) return state;
  const Mat m = linear_bs_matrix(r);
  TwoModeGaussian out;
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) out.mean[i] += m[i][k] * state.mean[k];
  }
  out.cov = multiply(multiply(m, state.cov), transpose(m));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      const double avg = 0.5 * (out.cov[i][j] + out.cov[j][i]);
      out.cov[i][j] = avg;
      out.cov[j][i] = avg;
    }
  }
  return out;
}

double commutator_defect(double r) {
  require_r(r, "commutator_defect");
  // M J M^T - J = r (G J + J G^T) + r^2 G J G^T, formed without cancellation.
  const Mat g = generator();
  const Mat j = symplectic_form();
  const Mat gj = multiply(g, j);
  const Mat jgt = multiply(j, transpose(g));
  const Mat gjgt = multiply(gj, transpose(g));
  double num = 0.0;
  double den = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double d = r * (gj[a][b] + jgt[a][b]) + r * r * gjgt[a][b];
      num += d * d;
      den += j[a][b] * j[a][b];
    }
  }
  return std::sqrt(num / den);
}

NoiseBudget readout_noise_budget(double r, double epr_residual) {
  require_r(r, "readout_noise_budget");
  if (!(epr_residual >= 0.0)) {
    throw DomainError("readout_noise_budget: epr_residual must be >= 0");
  }
  NoiseBudget nb;
  nb.r = r;
  nb.epr_residual = epr_residual;
  nb.pass = epr_residual < r;
  nb.ratio = r > 0.0 ? epr_residual / r
                     : std::numeric_limits<double>::infinity();
  return nb;
}

}  // namespace qmem::teleport
