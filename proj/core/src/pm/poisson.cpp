#include "hacc/pm/poisson.hpp"

#include <cmath>
#include <numbers>

#include "hacc/errors.hpp"
#include "hacc/pm/cic.hpp"
#include "hacc/pm/kernels.hpp"

namespace hacc::pm {

PmSolver::PmSolver(PmConfig cfg, fft::Engine engine)
    : cfg_((cfg.validate(), cfg)), fft_({cfg.n_grid, cfg.n_grid, cfg.n_grid}, cfg.fft_ranks, engine) {
  const int n = cfg_.n_grid;
  filter_.resize(static_cast<std::size_t>(n));
  k2_term_.resize(static_cast<std::size_t>(n));
  gradient_.resize(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double k = wavenumber(m, n, cfg_.box_length);
    filter_[static_cast<std::size_t>(m)] = filter_axis(k, cfg_);
    k2_term_[static_cast<std::size_t>(m)] = influence_axis_term(k, cfg_);
    gradient_[static_cast<std::size_t>(m)] = gradient_multiplier(k, cfg_).imag();
  }
}

ForceGrids PmSolver::solve_forces(const DensityGrid& density, const Background& background, double G) {
  const int n = cfg_.n_grid;
  if (density.delta.n() != n) {
    throw ContractError("solve_forces: density grid does not match the solver grid");
  }
  if (!(background.a > 0.0)) {
    throw DomainError("solve_forces: scale factor must be positive");
  }
  const double mean = density.delta.sum() / static_cast<double>(density.delta.size());
  if (!(std::abs(mean) < 1e-8)) {
    throw ContractError("solve_forces: density contrast is not mean-free");
  }

  const double source = 4.0 * std::numbers::pi * G * density.mean_density / background.a;
  const double norm = 1.0 / static_cast<double>(density.delta.size());

  const fft::DistributedField delta_k = fft_.forward(fft_.scatter(density.delta.values()));
  const fft::PencilLayout& layout = delta_k.layout;

  // Scalar part of the composed kernel: source * filter * influence, with the
  // FFT normalisation folded in.
  fft::DistributedField potential = delta_k;
  for (int r = 0; r < layout.n_ranks(); ++r) {
    auto& block = potential.blocks[static_cast<std::size_t>(r)];
#pragma omp parallel for schedule(static)
    for (std::size_t off = 0; off < block.size(); ++off) {
      const fft::Index3 g = layout.global_index(r, off);
      const auto i = static_cast<std::size_t>(g[0]);
      const auto j = static_cast<std::size_t>(g[1]);
      const auto k = static_cast<std::size_t>(g[2]);
      const double k2 = k2_term_[i] + k2_term_[j] + k2_term_[k];
      const double green = (k2 == 0.0) ? 0.0 : -1.0 / k2;
      block[off] *= source * norm * green * filter_[i] * filter_[j] * filter_[k];
    }
  }

  ForceGrids out;
  for (int axis = 0; axis < 3; ++axis) {
    fft::DistributedField component = potential;
    for (int r = 0; r < layout.n_ranks(); ++r) {
      auto& block = component.blocks[static_cast<std::size_t>(r)];
#pragma omp parallel for schedule(static)
      for (std::size_t off = 0; off < block.size(); ++off) {
        const fft::Index3 g = layout.global_index(r, off);
        // -grad: multiply by -i * D(k_axis).
        const double d = gradient_[static_cast<std::size_t>(g[axis])];
        block[off] *= std::complex<double>(0.0, -d);
      }
    }
    const std::vector<double> real = fft_.gather_real(fft_.inverse(component));
    out.component[static_cast<std::size_t>(axis)] = Grid3(n);
    std::copy(real.begin(), real.end(), out.component[static_cast<std::size_t>(axis)].values().begin());
  }
  return out;
}

ForceGrids PmSolver::point_mass_field(const std::array<double, 3>& source, double mass, double G) {
  const double xs[1] = {source[0]};
  const double ys[1] = {source[1]};
  const double zs[1] = {source[2]};
  const double ms[1] = {mass};
  const DensityGrid density = density_contrast(deposit_mass(xs, ys, zs, ms, cfg_), cfg_);
  return solve_forces(density, Background{1.0}, G);
}

}  // namespace hacc::pm
