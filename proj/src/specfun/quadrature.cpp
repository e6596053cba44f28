#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "qmem/errors.hpp"
#include "qmem/specfun.hpp"

namespace qmem::specfun {
namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half, centre last) with the
// embedded 7-point Gauss rule on the odd-indexed nodes.
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod(const std::function<double(double)>& g, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = g(centre);
  double kron = fc * kWk[7];
  double gauss = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXk[i];
    const double f1 = g(centre - dx);
    const double f2 = g(centre + dx);
    kron += kWk[i] * (f1 + f2);
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss)};
}

QuadratureResult adapt_finite(const std::function<double(double)>& g,
                              double a, double b,
                              const QuadratureOptions& opt) {
  constexpr std::size_t kPerSegment = 15;
  std::priority_queue<Segment> heap;
  Segment first = kronrod(g, a, b);
  std::size_t evals = kPerSegment;
  double total = first.value;
  double error = first.error;
  heap.push(first);

  auto converged = [&] {
    return error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  };

  while (!converged()) {
    if (!std::isfinite(total)) {
      throw ConvergenceError("integrate_adaptive: non-finite integrand", total,
                             error);
    }
    if (evals + 2 * kPerSegment > opt.max_evaluations) {
      throw ConvergenceError("integrate_adaptive: evaluation budget exhausted",
                             total, error);
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval collapsed to machine resolution; accept what remains.
      break;
    }
    heap.pop();
    Segment left = kronrod(g, worst.a, mid);
    Segment right = kronrod(g, mid, worst.b);
    evals += 2 * kPerSegment;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    // Periodic resummation keeps running totals from drifting.
    if (heap.size() % 64 == 0) {
      auto copy = heap;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, error, evals};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureOptions& options) {
  if (std::isnan(lo) || std::isnan(hi)) {
    throw DomainError("integrate_adaptive: NaN bound");
  }
  if (!(options.abs_tol > 0.0 || options.rel_tol > 0.0)) {
    throw DomainError("integrate_adaptive: tolerance must be positive");
  }
  if (lo == hi) return {0.0, 0.0, 1};
  if (lo > hi) {
    QuadratureResult r = integrate_adaptive(f, hi, lo, options);
    r.value = -r.value;
    return r;
  }

  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (lo_inf && hi_inf) {
    QuadratureOptions half = options;
    half.abs_tol *= 0.5;
    half.max_evaluations /= 2;
    QuadratureResult left = integrate_adaptive(f, -kInf, 0.0, half);
    QuadratureResult right = integrate_adaptive(f, 0.0, kInf, half);
    return {left.value + right.value, left.error_estimate + right.error_estimate,
            left.evaluations + right.evaluations};
  }
  if (hi_inf) {
    auto g = [&](double t) {
      const double s = 1.0 - t;
      return f(lo + t / s) / (s * s);
    };
    return adapt_finite(g, 0.0, 1.0, options);
  }
  if (lo_inf) {
    auto g = [&](double t) {
      const double s = 1.0 - t;
      return f(hi - t / s) / (s * s);
    };
    return adapt_finite(g, 0.0, 1.0, options);
  }
  return adapt_finite(f, lo, hi, options);
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, double tol) {
  QuadratureOptions opt;
  opt.abs_tol = tol;
  return integrate_adaptive(f, lo, hi, opt);
}

}  // namespace qmem::specfun
