#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "hacc/fft/pencil_layout.hpp"

namespace hacc::pm {

// Periodic cubic grid of n^3 doubles, row-major with x slowest.
class Grid3 {
 public:
  Grid3() = default;
  explicit Grid3(int n, double fill = 0.0)
      : n_(n), values_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }

  [[nodiscard]] std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(k);
  }
  double& operator()(int i, int j, int k) { return values_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return values_[index(i, j, k)]; }

  [[nodiscard]] std::span<double> values() { return values_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }

  [[nodiscard]] double sum() const;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

struct PmConfig {
  double box_length = 0.0;  // Mpc
  int n_grid = 0;           // grid points per dimension
  double sigma = 0.8;       // filter width, grid units
  double n_s = 3.0;         // filter sinc exponent
  double r_cut = 0.0;       // short/long matching radius, Mpc; 0 selects 3 grid cells
  fft::RankGrid fft_ranks{1, 1};

  [[nodiscard]] double delta() const { return box_length / n_grid; }
  [[nodiscard]] double cutoff() const { return r_cut > 0.0 ? r_cut : 3.0 * delta(); }
  [[nodiscard]] double volume() const { return box_length * box_length * box_length; }

  // Throws ConfigError unless n_grid >= 8, box_length > 0 and cutoff() < L/4.
  void validate() const;
};

// Density contrast per cell plus the mean comoving mass density (M_sun/Mpc^3)
// it was normalised by.
struct DensityGrid {
  Grid3 delta;
  double mean_density = 0.0;
};

// Components of -grad(phi) on the grid.
struct ForceGrids {
  std::array<Grid3, 3> component;
};

// Continuum wavenumber of FFT index m on an n-point axis of length L.
// Indices above n/2 map to negative frequencies; the Nyquist index maps to +pi/delta.
double wavenumber(int m, int n, double box_length);

}  // namespace hacc::pm
