#pragma once

#include <cstddef>
#include <functional>
#include <limits>

namespace qmem::specfun {

/// Bessel function of the first kind, order zero.
/// Accurate to ~1e-12 relative (absolute near zeros) for |x| <= 1e4.
double bessel_j0(double x);

/// Bessel function of the first kind, order one.
double bessel_j1(double x);

/// Exponentially scaled modified Bessel functions e^{-x} I0(x), e^{-x} I1(x).
/// Safe for arguments up to at least 1e6. Negative x is a domain error.
double bessel_i0e(double x);
double bessel_i1e(double x);

/// J1(2 sqrt(u)) / sqrt(u), continued to u = 0 by its series (value 1 at 0).
/// This is the removable singularity in the collective light kernel.
double j1_ratio(double u);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_evaluations = 400000;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Globally adaptive 15-point Gauss-Kronrod quadrature.
///
/// Either bound may be infinite. Semi-infinite ranges [a, inf) are mapped to
/// t in [0, 1) by x = a + t / (1 - t), dx = dt / (1 - t)^2 (mirrored for
/// (-inf, b]); the doubly infinite range is split at zero. Kronrod nodes never
/// touch t = 1, so the integrand is never evaluated at infinity.
///
/// Stops once the summed error estimate is below max(abs_tol, rel_tol*|I|).
/// Throws ConvergenceError carrying the best estimate when the evaluation
/// budget runs out first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureOptions& options = {});

/// Convenience overload with an absolute tolerance only.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double tol);

}  // namespace qmem::specfun
