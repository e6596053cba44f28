#include <cmath>
#include <numbers>

#include "qmem/errors.hpp"
#include "qmem/specfun.hpp"

namespace qmem::specfun {
namespace {

constexpr double kSeriesLimit = 2.0;      // power series below this |x|
constexpr double kAsymptoticLimit = 25.0;  // Hankel expansion above this |x|
constexpr double kScaledSeriesLimit = 30.0;

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(name) + ": argument must be finite");
  }
}

// Power series J0 and J1 for small |x|; terms alternate but stay below 1.
double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= q / (double(k) * double(k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double j1_series(double x) {
  const double q = -0.25 * x * x;
  double term = 0.5 * x;
  double sum = term;
  for (int k = 1; k < 60; ++k) {
    term *= q / (double(k) * double(k + 1));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's backward recurrence, normalized by J0 + 2 sum_k J_2k = 1.
// Returns {J0, J1} for moderate positive x.
struct J01 {
  double j0;
  double j1;
};

J01 j01_miller(double x) {
  int start = int(x + 10.0 * std::cbrt(x) + 30.0);
  if (start % 2 != 0) ++start;
  double next = 0.0;  // J_{n+1}
  double curr = 1e-300;  // J_n, arbitrary seed
  double norm = 0.0;
  double j0 = 0.0;
  double j1 = 0.0;
  for (int n = start; n >= 1; --n) {
    const double prev = 2.0 * n / x * curr - next;  // J_{n-1}
    next = curr;
    curr = prev;
    if ((n - 1) % 2 == 0 && n - 1 > 0) norm += 2.0 * curr;
    if (n - 1 == 1) j1 = curr;
    if (std::abs(curr) > 1e250) {
      next *= 1e-250;
      curr *= 1e-250;
      norm *= 1e-250;
      j1 *= 1e-250;
    }
  }
  j0 = curr;
  norm += j0;
  return {j0 / norm, j1 / norm};
}

// Hankel asymptotic expansion: J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi).
void hankel_pq(double nu, double x, double& p, double& q) {
  const double mu = 4.0 * nu * nu;
  const double inv8x = 1.0 / (8.0 * x);
  p = 1.0;
  q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) * inv8x / k;
    if (std::abs(term) > last) break;  // series started diverging
    last = std::abs(term);
    // k odd contributes to Q, k even to P, with alternating signs.
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (last < 1e-17) break;
  }
}

double j0_asymptotic(double x) {
  double p = 0.0;
  double q = 0.0;
  hankel_pq(0.0, x, p, q);
  const double s = std::sin(x);
  const double c = std::cos(x);
  // chi = x - pi/4
  const double cos_chi = (c + s) * std::numbers::sqrt2 * 0.5;
  const double sin_chi = (s - c) * std::numbers::sqrt2 * 0.5;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

double j1_asymptotic(double x) {
  double p = 0.0;
  double q = 0.0;
  hankel_pq(1.0, x, p, q);
  const double s = std::sin(x);
  const double c = std::cos(x);
  // chi = x - 3 pi/4
  const double cos_chi = (s - c) * std::numbers::sqrt2 * 0.5;
  const double sin_chi = -(s + c) * std::numbers::sqrt2 * 0.5;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

// e^{-x} I_nu(x) by the positive power series (no cancellation).
double scaled_i_series(int nu, double x) {
  const double q = 0.25 * x * x;
  double term = nu == 0 ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(k + nu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum * std::exp(-x);
}

// e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum_k (-1)^k a_k(nu) / x^k
double scaled_i_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  const double inv8x = 1.0 / (8.0 * x);
  double term = 1.0;
  double sum = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) * inv8x / k;
    if (std::abs(term) > last) break;
    last = std::abs(term);
    sum += term;
    if (last < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  const double ax = std::abs(x);
  if (ax <= kSeriesLimit) return j0_series(ax);
  if (ax <= kAsymptoticLimit) return j01_miller(ax).j0;
  return j0_asymptotic(ax);
}

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const double ax = std::abs(x);
  double v = 0.0;
  if (ax <= kSeriesLimit) {
    v = j1_series(ax);
  } else if (ax <= kAsymptoticLimit) {
    v = j01_miller(ax).j1;
  } else {
    v = j1_asymptotic(ax);
  }
  return x < 0.0 ? -v : v;
}

double bessel_i0e(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i0e: argument must be >= 0");
  if (std::isinf(x)) return 0.0;
  return x <= kScaledSeriesLimit ? scaled_i_series(0, x)
                                 : scaled_i_asymptotic(0, x);
}

double bessel_i1e(double x) {
  if (!(x >= 0.0)) throw DomainError("bessel_i1e: argument must be >= 0");
  if (std::isinf(x)) return 0.0;
  return x <= kScaledSeriesLimit ? scaled_i_series(1, x)
                                 : scaled_i_asymptotic(1, x);
}

double j1_ratio(double u) {
  if (!(u >= 0.0)) throw DomainError("j1_ratio: argument must be >= 0");
  if (u < 1e-8) {
    // 1 - u/2 + u^2/12, remainder below 1e-25
    return 1.0 - 0.5 * u + u * u / 12.0;
  }
  const double root = std::sqrt(u);
  return bessel_j1(2.0 * root) / root;
}

}  // namespace qmem::specfun
