#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

#include "hacc/pm/poisson.hpp"
#include "hacc/shortrange/kernel.hpp"

namespace hacc::analysis {

// Combined PM + short-range force on a test particle from a unit point mass
// (G = 1, a = 1). `radial` is the attractive component; `newton` the
// softened Newtonian reference r / (r^2 + eps)^(3/2).
struct PairForceSample {
  double r = 0.0;
  double radial = 0.0;
  double tangential = 0.0;
  double short_range = 0.0;
  double newton = 0.0;

  // |F - F_newton| / |F_newton|.
  [[nodiscard]] double relative_error() const;
};

struct PairForceResult {
  std::vector<PairForceSample> samples;
  double rms_relative_error = 0.0;
  double max_relative_error = 0.0;
};

// Random source positions, orientations and separations uniform in [r_min, r_max].
PairForceResult pair_force_test(pm::PmSolver& solver, const sr::ShortRangeKernel& kernel, std::size_t n_samples,
                                double r_min, double r_max, std::uint64_t seed, std::size_t n_sources = 16);

struct AnisotropyResult {
  double r = 0.0;
  std::size_t orientations = 0;
  double mean_radial = 0.0;
  double radial_std = 0.0;
  double tangential_rms = 0.0;

  // Tangential RMS over the mean radial force.
  [[nodiscard]] double scatter() const { return mean_radial != 0.0 ? tangential_rms / mean_radial : 0.0; }
};

// Force scatter at fixed separation r over random orientations and source positions.
AnisotropyResult anisotropy_at(pm::PmSolver& solver, const sr::ShortRangeKernel& kernel, double r,
                               std::size_t orientations, std::uint64_t seed, std::size_t n_sources = 16);

struct ForceProfileBin {
  double r = 0.0;
  double radial = 0.0;
  double tangential_rms = 0.0;
  double newton = 0.0;
  std::size_t count = 0;
};

// Linear bins in r over the sampled range.
std::vector<ForceProfileBin> force_profile(const PairForceResult& result, int n_bins);

// '#' header then r,F_radial,F_tangential_rms,F_newton,count rows.
void write_forces_csv(std::ostream& out, const std::vector<ForceProfileBin>& profile);

}  // namespace hacc::analysis
