#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hacc/ic/input_spectrum.hpp"

namespace hacc::ic {

// Fourier coefficients delta_k of a real periodic field on an n^3 lattice,
// row-major with x slowest, in the convention delta(x) = sum_k delta_k e^{ikx}.
// An unnormalised inverse FFT therefore returns delta(x) directly.
struct SpectralField {
  int n = 0;
  double box_length = 0.0;
  std::vector<std::complex<double>> values;

  SpectralField() = default;
  SpectralField(int n_, double box_length_)
      : n(n_), box_length(box_length_), values(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) *
                                                   static_cast<std::size_t>(n_)) {}

  [[nodiscard]] std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(n) +
           static_cast<std::size_t>(k);
  }
  std::complex<double>& operator()(int i, int j, int k) { return values[index(i, j, k)]; }
  const std::complex<double>& operator()(int i, int j, int k) const { return values[index(i, j, k)]; }
};

// Index of -m on an n-point axis.
inline int conjugate_index(int m, int n) { return m == 0 ? 0 : n - m; }

// Gaussian random field with <|delta_k|^2> = P(|k|)/V: independent normal
// real and imaginary parts of variance P/(2V), Hermitian symmetry enforced,
// self-conjugate modes real with variance P/V. The zero mode and every mode
// on a Nyquist plane are set to zero. Random numbers are drawn per x-plane
// from a generator seeded by (seed, plane), so the result does not depend on
// the thread count. Throws ConfigError for n < 8.
SpectralField gaussian_field(const InputPowerSpectrum& spectrum, int n, double box_length, std::uint64_t seed);

}  // namespace hacc::ic
