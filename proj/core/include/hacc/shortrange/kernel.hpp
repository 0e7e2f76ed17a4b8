#pragma once

#include <array>
#include <cmath>

namespace hacc::sr {

// Short-range force factor f_SR(s) = (s + eps)^(-3/2) - f_grid(s), s = r.r.
// The pair acceleration on i from j is m_j (x_j - x_i) f_SR(s), in units
// where G = 1 and a = 1. f_grid is the fitted radial grid force divided by r.
struct ShortRangeKernel {
  double epsilon = 0.0;             // softening, Mpc^2
  double r_cut = 0.0;               // Mpc
  std::array<double, 6> poly{};     // f_grid(s) = sum poly[i] s^i, s in Mpc^2

  [[nodiscard]] double r_cut2() const { return r_cut * r_cut; }

  [[nodiscard]] double f_grid(double s) const {
    return poly[0] + s * (poly[1] + s * (poly[2] + s * (poly[3] + s * (poly[4] + s * poly[5]))));
  }
};

// Zero for s >= r_cut^2 and for s == 0; written as an arithmetic select so the
// loops calling it vectorise.
inline double eval_f_sr(double s, const ShortRangeKernel& k) {
  const double se = s + k.epsilon;
  const double newton = 1.0 / (se * std::sqrt(se));
  const double f = newton - k.f_grid(s);
  return (s > 0.0 && s < k.r_cut2()) ? f : 0.0;
}

// Default softening (0.1 delta)^2.
inline double default_epsilon(double delta) { return 0.01 * delta * delta; }

}  // namespace hacc::sr
