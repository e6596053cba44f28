#include <algorithm>
#include <cmath>
#include <string>

#include "qmem/dynamics.hpp"
#include "qmem/errors.hpp"

namespace qmem::dynamics {
namespace {

constexpr double kMaxCouplingCell = 0.1;  // g dtau dz
constexpr double kMaxDecayStep = 0.5;     // Gamma dtau
constexpr double kGrowthLimit = 1e6;

// Covariance of consecutive input-field bins (unit vacuum per bin) for the
// correlator delta(t) - s b/2 e^{-b|t|} averaged over bins of width dt.
struct BinCorrelator {
  double diagonal = 1.0;
  double off_scale = 0.0;  // Cov(m, m + d) = off_scale * rho^(d - 1)
  double rho = 0.0;

  BinCorrelator(const mapping::SqueezingModel& model, double gamma, double dt) {
    if (model.kind == mapping::SqueezingModel::Kind::Flat) {
      diagonal = model.x0_sq;
      return;
    }
    const double b = model.gamma_q / gamma;
    const double one_minus_rho = -std::expm1(-b * dt);
    rho = 1.0 - one_minus_rho;
    diagonal = 1.0 - model.s * (1.0 - one_minus_rho / (b * dt));
    off_scale = -model.s * one_minus_rho * one_minus_rho / (2.0 * b * dt);
  }

  double variance(const std::vector<double>& coeff) const {
    double diag = 0.0;
    double cross = 0.0;
    double running = 0.0;  // sum_{m' < m} c_m' rho^(m - 1 - m')
    for (std::size_t m = 0; m < coeff.size(); ++m) {
      if (m > 0) running = rho * running + coeff[m - 1];
      diag += coeff[m] * coeff[m];
      cross += coeff[m] * running;
    }
    return diagonal * diag + 2.0 * off_scale * cross;
  }
};

// Passes one field bin through every cell: in cell j the pair
// (a_j, b) -> (c a_j + s b, -s a_j + c b). Applied to influence columns:
// rows of `coeff` are cells, columns are independent inputs; `field` holds
// the bin's coefficient on each input and is updated in place.
void cascade_columns(std::vector<double>& coeff, std::vector<double>& field,
                     int nz, std::size_t ncols, double c, double s) {
  for (int j = 0; j < nz; ++j) {
    double* row = coeff.data() + std::size_t(j) * ncols;
    for (std::size_t m = 0; m < ncols; ++m) {
      const double v = row[m];
      const double f = field[m];
      row[m] = c * v + s * f;
      field[m] = -s * v + c * f;
    }
  }
}

// Same cascade acting on a symmetric covariance of (a_0 .. a_{nz-1}, b),
// stored as (nz + 1)^2 row-major with the field last.
void cascade_covariance(std::vector<double>& cov, int nz, double c, double s) {
  const std::size_t n = std::size_t(nz) + 1;
  const std::size_t fb = n - 1;
  for (int j = 0; j < nz; ++j) {
    double* rj = cov.data() + std::size_t(j) * n;
    double* rb = cov.data() + fb * n;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = rj[i];
      const double f = rb[i];
      rj[i] = c * v + s * f;
      rb[i] = -s * v + c * f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double& v = cov[i * n + std::size_t(j)];
      double& f = cov[i * n + fb];
      const double vv = v;
      const double ff = f;
      v = c * vv + s * ff;
      f = -s * vv + c * ff;
    }
  }
}

}  // namespace

void GridSpec::validate() const {
  if (nz < 2 || ntau < 2) {
    throw ConfigError("GridSpec: nz and ntau must be >= 2");
  }
  if (!(length > 0.0) || !(tau_max > 0.0)) {
    throw ConfigError("GridSpec: length and tau_max must be > 0");
  }
}

GridResult simulate_grid(const PulseArea& area, double gamma,
                         const GridSpec& grid,
                         const mapping::SqueezingModel& model) {
  grid.validate();
  model.validate();
  if (!(gamma > 0.0)) throw ConfigError("simulate_grid: gamma must be > 0");

  const double dtau = grid.tau_max / grid.ntau;
  const double dz = grid.length / grid.nz;
  const double coupling_cell = area.max_rate() * dtau * dz;
  if (coupling_cell > kMaxCouplingCell) {
    throw ConfigError("simulate_grid: g dtau dz = " +
                      std::to_string(coupling_cell) + " exceeds 0.1");
  }
  if (gamma * dtau > kMaxDecayStep) {
    throw ConfigError("simulate_grid: Gamma dtau = " +
                      std::to_string(gamma * dtau) + " exceeds 0.5");
  }

  const int nz = grid.nz;
  const int nt = grid.ntau;
  const std::size_t ncells = std::size_t(nz);
  const std::size_t nbins = std::size_t(nt);
  const double h = 1.0 / nz;
  const double sqrt_h = std::sqrt(h);
  const double dt = gamma * dtau;
  const double decay = std::exp(-dt);
  const double refill = -std::expm1(-2.0 * dt);
  const BinCorrelator correlator(model, gamma, dt);

  GridResult result;
  KernelTable& kt = result.kernels;
  kt.nz = nz;
  kt.ntau = nt;
  kt.dt = dt;
  kt.tau.resize(nbins + 1);
  for (int k = 0; k <= nt; ++k) kt.tau[k] = k * dtau;
  kt.zeta.resize(ncells);
  for (int j = 0; j < nz; ++j) kt.zeta[j] = (j + 0.5) * h;
  kt.light.assign((nbins + 1) * nbins, 0.0);
  kt.initial.assign((nbins + 1) * ncells, 0.0);
  kt.atomic_start.assign(ncells * ncells, 0.0);

  // Influence of input-field bins on the cells, nz x nt.
  std::vector<double> field_coeff(ncells * nbins, 0.0);
  // Influence of the initial cell amplitudes, nz x nz.
  std::vector<double> init_coeff(ncells * ncells, 0.0);
  // White atomic noise covariance with the transient field slot appended.
  std::vector<double> cov((ncells + 1) * (ncells + 1), 0.0);
  for (std::size_t j = 0; j < ncells; ++j) {
    init_coeff[j * ncells + j] = 1.0;
    cov[j * (ncells + 1) + j] = 1.0;
    kt.atomic_start[j * ncells + j] = 1.0 / h;
    kt.initial[j] = 1.0;
  }
  result.variance_trace.assign(nbins + 1, 0.0);
  result.light_trace.assign(nbins + 1, 0.0);
  result.variance_trace[0] = 1.0;

  std::vector<double> field(nbins);
  std::vector<double> field_init(ncells);
  std::vector<double> collective(nbins);
  double atom_part = 1.0;
  double light_part = 0.0;

  for (int k = 0; k < nt; ++k) {
    const double added = (area.at((k + 1) * dtau) - area.at(k * dtau)) *
                         grid.length;
    const double theta = std::sqrt(std::max(added, 0.0) * h);
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    if (theta > 0.0) {
      std::fill(field.begin(), field.end(), 0.0);
      field[std::size_t(k)] = 1.0;
      cascade_columns(field_coeff, field, nz, nbins, c, s);
      for (std::size_t m = std::size_t(k) + 1; m < nbins; ++m) {
        kt.acausal_max = std::max(kt.acausal_max, std::abs(field[m]));
      }
      std::fill(field_init.begin(), field_init.end(), 0.0);
      cascade_columns(init_coeff, field_init, nz, ncells, c, s);
      // Field slot enters with no atomic-noise content.
      const std::size_t n = ncells + 1;
      for (std::size_t i = 0; i < n; ++i) {
        cov[ncells * n + i] = 0.0;
        cov[i * n + ncells] = 0.0;
      }
      cascade_covariance(cov, nz, c, s);
    }

    for (double& v : field_coeff) v *= decay;
    for (double& v : init_coeff) v *= decay;
    const std::size_t n = ncells + 1;
    for (std::size_t i = 0; i < ncells; ++i) {
      for (std::size_t j = 0; j < ncells; ++j) cov[i * n + j] *= decay * decay;
      cov[i * n + i] += refill;
    }

    // Collective spin X = sum_j sqrt(h) a_j.
    std::fill(collective.begin(), collective.end(), 0.0);
    for (std::size_t j = 0; j < ncells; ++j) {
      const double* row = field_coeff.data() + j * nbins;
      for (std::size_t m = 0; m < nbins; ++m) collective[m] += sqrt_h * row[m];
    }
    const std::size_t row_k = std::size_t(k) + 1;
    const double impulse = 1.0 / std::sqrt(dt);
    for (std::size_t m = 0; m < nbins; ++m) {
      kt.light[row_k * nbins + m] = collective[m] * impulse;
    }
    for (std::size_t j = 0; j < ncells; ++j) {
      const double* row = init_coeff.data() + j * ncells;
      for (std::size_t jp = 0; jp < ncells; ++jp) {
        kt.initial[row_k * ncells + jp] += row[jp];
      }
    }

    atom_part = 0.0;
    for (std::size_t i = 0; i < ncells; ++i) {
      for (std::size_t j = 0; j < ncells; ++j) atom_part += cov[i * n + j];
    }
    atom_part *= h;
    light_part = correlator.variance(collective);
    const double total = atom_part + light_part;
    if (!std::isfinite(total) || std::abs(total) > kGrowthLimit) {
      throw NumericalError("simulate_grid: collective variance diverged at step " +
                           std::to_string(k + 1));
    }
    result.variance_trace[row_k] = total;
    result.light_trace[row_k] = light_part;
  }

  kt.atomic_final.resize(ncells * ncells);
  for (std::size_t i = 0; i < ncells * ncells; ++i) {
    kt.atomic_final[i] = init_coeff[i] / h;
  }
  result.report =
      mapping::make_report(atom_part, light_part, model.reference_depth());
  return result;
}

GridResult simulate_grid(const model::MediumParams& medium,
                         const model::DriveParams& drive, const GridSpec& grid,
                         const mapping::SqueezingModel& model) {
  if (std::abs(grid.length - medium.length) > 1e-12 * medium.length) {
    throw ConfigError("simulate_grid: grid length differs from medium length");
  }
  const double gamma = model::total_dephasing(medium, drive, true);
  return simulate_grid(PulseArea::from_drive(drive), gamma, grid, model);
}

double light_kernel_error(const KernelTable& table, const PulseArea& area,
                          double length, double gamma) {
  double num = 0.0;
  double den = 0.0;
  for (int k = 1; k <= table.ntau; ++k) {
    for (int m = 0; m < k; ++m) {
      const double tau_m = table.tau[m];
      const double coupling = std::sqrt(area.rate(tau_m) * length / gamma);
      const double ref =
          coupling *
          collective_light_kernel(table.tau[k], tau_m, area, length, gamma) /
          length;
      const double diff = table.light_at(k, m) - ref;
      num += diff * diff;
      den += ref * ref;
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double initial_kernel_error(const KernelTable& table, const PulseArea& area,
                            double length, double gamma) {
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k <= table.ntau; ++k) {
    for (int j = 0; j < table.nz; ++j) {
      const double ref = collective_initial_kernel(
          table.zeta[j] * length, table.tau[k], area, length, gamma);
      const double diff = table.initial_at(k, j) - ref;
      num += diff * diff;
      den += ref * ref;
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace qmem::dynamics
