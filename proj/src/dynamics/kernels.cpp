#include <algorithm>
#include <cmath>

#include "qmem/dynamics.hpp"
#include "qmem/errors.hpp"

namespace qmem::dynamics {

PulseArea::PulseArea(std::vector<double> times, std::vector<double> values,
                     double tail_slope)
    : times_(std::move(times)), values_(std::move(values)),
      tail_slope_(tail_slope) {}

PulseArea PulseArea::constant(double coupling) {
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw DomainError("PulseArea: coupling must be >= 0");
  }
  return PulseArea({0.0}, {0.0}, coupling);
}

PulseArea PulseArea::off() { return PulseArea({0.0}, {0.0}, 0.0); }

PulseArea PulseArea::from_profile(
    double coupling, const std::vector<model::DriveSegment>& profile) {
  if (profile.empty()) return constant(coupling);
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw DomainError("PulseArea: coupling must be >= 0");
  }
  std::vector<double> times{0.0};
  std::vector<double> values{0.0};
  for (const auto& seg : profile) {
    if (!(seg.duration > 0.0) || !(seg.relative_power >= 0.0)) {
      throw DomainError("PulseArea: segments need duration > 0, power >= 0");
    }
    times.push_back(times.back() + seg.duration);
    values.push_back(values.back() +
                     coupling * seg.relative_power * seg.duration);
  }
  return PulseArea(std::move(times), std::move(values), 0.0);
}

PulseArea PulseArea::from_drive(const model::DriveParams& drive) {
  return from_profile(drive.coupling, drive.profile);
}

double PulseArea::at(double tau) const {
  if (tau <= 0.0) return 0.0;
  if (tau >= times_.back()) {
    return values_.back() + tail_slope_ * (tau - times_.back());
  }
  const auto it = std::upper_bound(times_.begin(), times_.end(), tau);
  const std::size_t i = std::size_t(it - times_.begin()) - 1;
  const double frac = (tau - times_[i]) / (times_[i + 1] - times_[i]);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

double PulseArea::rate(double tau) const {
  if (tau >= times_.back()) return tail_slope_;
  const auto it =
      std::upper_bound(times_.begin(), times_.end(), std::max(tau, 0.0));
  const std::size_t i = std::size_t(it - times_.begin()) - 1;
  return (values_[i + 1] - values_[i]) / (times_[i + 1] - times_[i]);
}

double PulseArea::max_rate() const {
  double r = tail_slope_;
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
    r = std::max(r, (values_[i + 1] - values_[i]) / (times_[i + 1] - times_[i]));
  }
  return r;
}

double collective_initial_kernel(double z_prime, double tau,
                                 const PulseArea& area, double length,
                                 double gamma) {
  const double remaining = std::max(length - z_prime, 0.0);
  const double u = area.at(tau) * remaining;
  return std::exp(-gamma * tau) * specfun::bessel_j0(2.0 * std::sqrt(u));
}

double collective_light_kernel(double tau, double tau_prime,
                               const PulseArea& area, double length,
                               double gamma) {
  if (!(tau_prime < tau)) {
    throw DomainError("collective_light_kernel: requires tau' < tau");
  }
  const double du = area.at(tau) - area.at(tau_prime);
  return std::exp(-gamma * (tau - tau_prime)) * length *
         specfun::j1_ratio(du * length);
}

double squared_j0_kernel_integral(double area_times_length) {
  const double w = 2.0 * std::sqrt(area_times_length);
  const double j0 = specfun::bessel_j0(w);
  const double j1 = specfun::bessel_j1(w);
  return j0 * j0 + j1 * j1;
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    orders.push_back(std::log2(errors[i] / errors[i + 1]));
  }
  return orders;
}

std::vector<double> observed_orders(const std::vector<double>& errors,
                                    const std::vector<int>& sizes) {
  if (errors.size() != sizes.size()) {
    throw DomainError("observed_orders: errors and sizes differ in length");
  }
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    orders.push_back(std::log(errors[i] / errors[i + 1]) /
                     std::log(double(sizes[i + 1]) / sizes[i]));
  }
  return orders;
}

}  // namespace qmem::dynamics
