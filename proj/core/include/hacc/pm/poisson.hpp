#pragma once

#include <array>
#include <span>
#include <vector>

#include "hacc/cosmology.hpp"
#include "hacc/fft/pencil_fft.hpp"
#include "hacc/pm/grid.hpp"

namespace hacc::pm {

// Spectrally filtered particle-mesh Poisson solver. One forward FFT of the
// density contrast is multiplied by filter x influence function x gradient x
// source prefactor for each axis, and each force component costs one inverse
// FFT: four transforms per solve.
class PmSolver {
 public:
  explicit PmSolver(PmConfig cfg, fft::Engine engine = fft::Engine::fftw);

  [[nodiscard]] const PmConfig& config() const { return cfg_; }

  // Solves grad^2 phi = 4 pi G rho_mean delta / a and returns -grad(phi).
  // rho_mean is the comoving mean density carried by `density`; for a
  // cosmological particle load it equals omega_m * rho_crit, so the source
  // is the usual 4 pi G a^2 rho_m(a) delta with the time-dependent matter density.
  [[nodiscard]] ForceGrids solve_forces(const DensityGrid& density, const Background& background, double G);

  // Force field of a lone point mass at `source` in an otherwise empty
  // periodic box (mean density subtracted), with a = 1.
  [[nodiscard]] ForceGrids point_mass_field(const std::array<double, 3>& source, double mass, double G);

  [[nodiscard]] std::size_t fft_invocations() const { return fft_.transform_count(); }
  [[nodiscard]] fft::PencilFft& fft() { return fft_; }

 private:
  PmConfig cfg_;
  fft::PencilFft fft_;
  // Per-axis lookup tables indexed by FFT index.
  std::vector<double> filter_;
  std::vector<double> k2_term_;
  std::vector<double> gradient_;
};

}  // namespace hacc::pm
