#include "hacc/ic/gaussian_field.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "hacc/errors.hpp"
#include "hacc/pm/grid.hpp"

namespace hacc::ic {

namespace {

// True when (i,j,k) is the representative of the pair {m, -m}: the
// lexicographically smaller of the two index triples.
bool canonical(int i, int j, int k, int n) {
  const int ci = conjugate_index(i, n);
  const int cj = conjugate_index(j, n);
  const int ck = conjugate_index(k, n);
  if (i != ci) return i < ci;
  if (j != cj) return j < cj;
  return k <= ck;
}

}  // namespace

SpectralField gaussian_field(const InputPowerSpectrum& spectrum, int n, double box_length, std::uint64_t seed) {
  if (n < 8) {
    throw ConfigError("gaussian_field: grid must have at least 8 points per side");
  }
  if (!(box_length > 0.0)) {
    throw ConfigError("gaussian_field: box length must be positive");
  }
  SpectralField field(n, box_length);
  const double volume = box_length * box_length * box_length;
  const int nyquist = (n % 2 == 0) ? n / 2 : -1;

  // Raw draws for every mode, one generator per x-plane.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffU), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double kx = pm::wavenumber(i, n, box_length);
    for (int j = 0; j < n; ++j) {
      const double ky = pm::wavenumber(j, n, box_length);
      for (int k = 0; k < n; ++k) {
        const double re = normal(rng);
        const double im = normal(rng);
        const double kz = pm::wavenumber(k, n, box_length);
        const double kmag = std::sqrt(kx * kx + ky * ky + kz * kz);
        const double sigma = std::sqrt(spectrum(kmag) / (2.0 * volume));
        field(i, j, k) = {sigma * re, sigma * im};
      }
    }
  }

  // Hermitian symmetry: copy the representative of each pair into its partner.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (i == nyquist || j == nyquist || k == nyquist) {
          field(i, j, k) = 0.0;
          continue;
        }
        const int ci = conjugate_index(i, n);
        const int cj = conjugate_index(j, n);
        const int ck = conjugate_index(k, n);
        if (ci == i && cj == j && ck == k) {
          // Self-conjugate: real, carrying the full variance.
          field(i, j, k) = {field(i, j, k).real() * std::numbers::sqrt2, 0.0};
        } else if (!canonical(i, j, k, n)) {
          field(i, j, k) = std::conj(field(ci, cj, ck));
        }
      }
    }
  }
  field(0, 0, 0) = 0.0;
  return field;
}

}  // namespace hacc::ic
