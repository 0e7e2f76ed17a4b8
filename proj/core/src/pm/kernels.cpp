#include "hacc/pm/kernels.hpp"

#include <cmath>
#include <numbers>

#include "hacc/errors.hpp"

namespace hacc::pm {

double Grid3::sum() const {
  double s = 0.0;
  for (double v : values_) {
    s += v;
  }
  return s;
}

void PmConfig::validate() const {
  if (!(box_length > 0.0)) {
    throw ConfigError("pm: box_length must be positive");
  }
  if (n_grid < 8) {
    throw ConfigError("pm: n_grid must be at least 8");
  }
  if (!(sigma >= 0.0) || !(n_s >= 0.0)) {
    throw ConfigError("pm: filter parameters must be non-negative");
  }
  if (!(cutoff() < box_length / 4.0)) {
    throw ConfigError("pm: r_cut must be below L/4");
  }
}

double wavenumber(int m, int n, double box_length) {
  const int signed_m = (2 * m <= n) ? m : m - n;
  return 2.0 * std::numbers::pi * signed_m / box_length;
}

double filter_axis(double k, const PmConfig& cfg) {
  const double kd = k * cfg.delta();
  const double gauss = std::exp(-kd * kd * cfg.sigma * cfg.sigma / 4.0);
  if (kd == 0.0 || cfg.n_s == 0.0) {
    return gauss;
  }
  const double half = 0.5 * kd;
  const double sinc = std::sin(half) / half;
  return gauss * std::pow(sinc, cfg.n_s);
}

double filter_kernel(const Wavevector& k, const PmConfig& cfg) {
  return filter_axis(k[0], cfg) * filter_axis(k[1], cfg) * filter_axis(k[2], cfg);
}

double influence_axis_term(double k, const PmConfig& cfg) {
  const double d = cfg.delta();
  const double s = std::sin(0.5 * k * d);
  const double u = s * s;
  return (4.0 / (d * d)) * (u + u * u / 3.0 + 8.0 * u * u * u / 45.0);
}

double influence_function(const Wavevector& k, const PmConfig& cfg) {
  const double k2 = influence_axis_term(k[0], cfg) + influence_axis_term(k[1], cfg) + influence_axis_term(k[2], cfg);
  if (k2 == 0.0) {
    return 0.0;
  }
  return -1.0 / k2;
}

std::complex<double> gradient_multiplier(double k_axis, const PmConfig& cfg) {
  const double d = cfg.delta();
  const double kd = k_axis * d;
  // sin(k delta) is exactly zero at the Nyquist frequency only up to roundoff;
  // pin the lattice points where the stencil vanishes.
  if (std::abs(std::abs(kd) - std::numbers::pi) < 1e-12) {
    return {0.0, 0.0};
  }
  return {0.0, (8.0 * std::sin(kd) - std::sin(2.0 * kd)) / (6.0 * d)};
}

}  // namespace hacc::pm
