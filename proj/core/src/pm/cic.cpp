#include "hacc/pm/cic.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hacc/errors.hpp"

namespace hacc::pm {

namespace {

struct CicStencil {
  int i0[3];
  int i1[3];
  double w0[3];
  double w1[3];
};

inline CicStencil stencil(double x, double y, double z, int n, double inv_delta) {
  CicStencil st{};
  const double pos[3] = {x, y, z};
  for (int d = 0; d < 3; ++d) {
    const double u = pos[d] * inv_delta;
    const double fl = std::floor(u);
    const double frac = u - fl;
    int i = static_cast<int>(fl) % n;
    if (i < 0) {
      i += n;
    }
    st.i0[d] = i;
    st.i1[d] = (i + 1 == n) ? 0 : i + 1;
    st.w1[d] = frac;
    st.w0[d] = 1.0 - frac;
  }
  return st;
}

template <class F>
inline void for_each_corner(const CicStencil& st, F&& f) {
  for (int a = 0; a < 2; ++a) {
    const int i = a ? st.i1[0] : st.i0[0];
    const double wx = a ? st.w1[0] : st.w0[0];
    for (int b = 0; b < 2; ++b) {
      const int j = b ? st.i1[1] : st.i0[1];
      const double wy = b ? st.w1[1] : st.w0[1];
      for (int c = 0; c < 2; ++c) {
        const int k = c ? st.i1[2] : st.i0[2];
        const double wz = c ? st.w1[2] : st.w0[2];
        f(i, j, k, wx * wy * wz);
      }
    }
  }
}

Grid3 deposit_impl(std::span<const double> x, std::span<const double> y, std::span<const double> z,
                   std::span<const double> mass, const std::vector<std::size_t>* subset, const PmConfig& cfg) {
  const int n = cfg.n_grid;
  const double inv_delta = 1.0 / cfg.delta();
  const std::size_t count = subset ? subset->size() : x.size();

  for (std::size_t q = 0; q < count; ++q) {
    const std::size_t p = subset ? (*subset)[q] : q;
    if (!std::isfinite(x[p]) || !std::isfinite(y[p]) || !std::isfinite(z[p])) {
      throw ContractError("cic_deposit: non-finite particle position");
    }
  }

  // Each chunk deposits into a private grid; chunks are summed in a fixed
  // order so the result depends only on the thread count.
  const int chunks = std::max(1, std::min(omp_get_max_threads(), static_cast<int>(count / 4096) + 1));
  std::vector<Grid3> partial(static_cast<std::size_t>(chunks - 1), Grid3(n));
  Grid3 total(n);

#pragma omp parallel for schedule(static, 1)
  for (int c = 0; c < chunks; ++c) {
    Grid3& g = (c == 0) ? total : partial[static_cast<std::size_t>(c - 1)];
    const std::size_t lo = count * static_cast<std::size_t>(c) / static_cast<std::size_t>(chunks);
    const std::size_t hi = count * static_cast<std::size_t>(c + 1) / static_cast<std::size_t>(chunks);
    for (std::size_t q = lo; q < hi; ++q) {
      const std::size_t p = subset ? (*subset)[q] : q;
      const CicStencil st = stencil(x[p], y[p], z[p], n, inv_delta);
      const double m = mass[p];
      for_each_corner(st, [&](int i, int j, int k, double w) { g(i, j, k) += m * w; });
    }
  }

  auto out = total.values();
  for (const auto& g : partial) {
    auto in = g.values();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += in[i];
    }
  }
  return total;
}

}  // namespace

Grid3 deposit_mass(std::span<const double> x, std::span<const double> y, std::span<const double> z,
                   std::span<const double> mass, const PmConfig& cfg) {
  if (y.size() != x.size() || z.size() != x.size() || mass.size() != x.size()) {
    throw ContractError("cic_deposit: coordinate and mass arrays differ in length");
  }
  return deposit_impl(x, y, z, mass, nullptr, cfg);
}

Grid3 deposit_mass(const ParticleStore& particles, const PmConfig& cfg) {
  std::vector<std::size_t> active;
  active.reserve(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    if (particles.status[i] == Status::active) {
      active.push_back(i);
    }
  }
  return deposit_impl(particles.x, particles.y, particles.z, particles.mass, &active, cfg);
}

DensityGrid density_contrast(const Grid3& mass, const PmConfig& cfg) {
  const double total = mass.sum();
  if (!(total > 0.0)) {
    throw ContractError("density_contrast: grid holds no mass");
  }
  const double mean_cell_mass = total / static_cast<double>(mass.size());
  DensityGrid out{Grid3(mass.n()), total / cfg.volume()};
  auto in = mass.values();
  auto d = out.delta.values();
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = in[i] / mean_cell_mass - 1.0;
  }
  return out;
}

DensityGrid cic_deposit(const ParticleStore& particles, const PmConfig& cfg) {
  return density_contrast(deposit_mass(particles, cfg), cfg);
}

VectorField cic_interpolate(const ForceGrids& forces, std::span<const double> x, std::span<const double> y,
                            std::span<const double> z, const PmConfig& cfg) {
  const std::size_t count = x.size();
  VectorField out(count);
  const int n = cfg.n_grid;
  const double inv_delta = 1.0 / cfg.delta();
  const auto& fx = forces.component[0];
  const auto& fy = forces.component[1];
  const auto& fz = forces.component[2];

#pragma omp parallel for schedule(static)
  for (std::size_t p = 0; p < count; ++p) {
    const CicStencil st = stencil(x[p], y[p], z[p], n, inv_delta);
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
    for_each_corner(st, [&](int i, int j, int k, double w) {
      const std::size_t idx = fx.index(i, j, k);
      ax += w * fx.values()[idx];
      ay += w * fy.values()[idx];
      az += w * fz.values()[idx];
    });
    out.x[p] = ax;
    out.y[p] = ay;
    out.z[p] = az;
  }
  return out;
}

}  // namespace hacc::pm
