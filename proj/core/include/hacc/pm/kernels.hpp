#pragma once

#include <array>
#include <complex>

#include "hacc/pm/grid.hpp"

namespace hacc::pm {

using Wavevector = std::array<double, 3>;

// One-axis factor exp(-(k delta)^2 sigma^2 / 4) * [(2/(k delta)) sin(k delta / 2)]^n_s.
double filter_axis(double k, const PmConfig& cfg);

// Isotropising spectral filter: product of filter_axis over the three axes.
double filter_kernel(const Wavevector& k, const PmConfig& cfg);

// One-axis contribution to the modified k^2: (4/delta^2)(u + u^2/3 + 8u^3/45),
// u = sin^2(k delta / 2). This truncates the series of (k delta / 2)^2 = asin^2(sqrt u).
double influence_axis_term(double k, const PmConfig& cfg);

// Sixth-order periodic inverse Laplacian -1/k~^2; zero at k = 0.
double influence_function(const Wavevector& k, const PmConfig& cfg);

// Fourth-order spectral derivative i (8 sin(k delta) - sin(2 k delta)) / (6 delta).
std::complex<double> gradient_multiplier(double k_axis, const PmConfig& cfg);

}  // namespace hacc::pm
