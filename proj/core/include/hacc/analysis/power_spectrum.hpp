#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "hacc/ic/gaussian_field.hpp"
#include "hacc/particles.hpp"
#include "hacc/pm/grid.hpp"

namespace hacc::analysis {

struct PkBin {
  double k_lo = 0.0;
  double k_hi = 0.0;
  double k = 0.0;      // mean |k| of the modes in the bin, 1/Mpc
  double power = 0.0;  // Mpc^3
  std::size_t modes = 0;
};

struct PowerSpectrumResult {
  std::vector<PkBin> bins;
  double shot_noise = 0.0;  // V / N, Mpc^3; reported, not subtracted
  double a = 1.0;
  double box_length = 0.0;
  int n_grid = 0;
};

// Logarithmic bins from the fundamental 2 pi / L up to sqrt(3) times the
// Nyquist wavenumber. Every non-zero lattice mode lands in exactly one bin,
// so the mode counts sum to n^3 - 1. P = V <|delta_k|^2> with delta_k the
// discrete Fourier coefficient divided by n^3.
//
// From particles: CIC deposit of ACTIVE particles, FFT, CIC window
// deconvolved per axis. Throws ContractError for an empty particle set.
PowerSpectrumResult power_spectrum(const ParticleStore& particles, double box_length, int n_grid, int n_bins,
                                   double a = 1.0);

// From a density contrast grid; the CIC window is divided out when requested.
PowerSpectrumResult power_spectrum(const pm::Grid3& delta, double box_length, int n_bins, bool deconvolve_cic,
                                   double shot_noise = 0.0, double a = 1.0);

// Directly from Fourier coefficients in the delta(x) = sum delta_k e^{ikx} convention.
PowerSpectrumResult power_spectrum(const ic::SpectralField& field, int n_bins);

// '#' header then k_lo,k_hi,k,P,count,shot_noise rows.
void write_pk_csv(std::ostream& out, const PowerSpectrumResult& result);

}  // namespace hacc::analysis
