#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hacc/pm/poisson.hpp"
#include "hacc/shortrange/kernel.hpp"

namespace hacc::sr {

// PM force on a test particle from a unit point mass (G = 1, a = 1).
// `radial` is the attractive component along the separation, `tangential`
// the magnitude of the remainder.
struct GridForceSample {
  double r = 0.0;
  double radial = 0.0;
  double tangential = 0.0;
};

// Places test particles at random orientations and separations uniform in
// [r_min, r_max] around `n_sources` randomly positioned sources. Each source
// costs one PM solve.
std::vector<GridForceSample> sample_grid_force(pm::PmSolver& solver, std::size_t n_samples, std::size_t n_sources,
                                               double r_min, double r_max, std::uint64_t seed);

struct GridForceFitOptions {
  std::size_t n_samples = 10000;
  std::size_t n_sources = 16;
  std::uint64_t seed = 20120601;
  double epsilon = -1.0;  // negative selects default_epsilon(delta)
};

// Least-squares fit of a degree-5 polynomial in s to the measured radial grid
// force divided by r over r in (0, r_cut]. Residuals are weighted by
// (s + eps)^(3/2), i.e. measured relative to the softened Newtonian force.
// Throws NumericError when the weighted design matrix has condition number > 1e12.
ShortRangeKernel fit_grid_force(pm::PmSolver& solver, const GridForceFitOptions& options = {});

// Fit from precomputed samples.
ShortRangeKernel fit_grid_force(const std::vector<GridForceSample>& samples, double r_cut, double epsilon);

}  // namespace hacc::sr
