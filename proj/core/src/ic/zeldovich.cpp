#include "hacc/ic/zeldovich.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hacc/domain/decomposition.hpp"
#include "hacc/errors.hpp"
#include "hacc/fft/pencil_fft.hpp"
#include "hacc/pm/kernels.hpp"

namespace hacc::ic {

DisplacementField displacement_field(const SpectralField& delta_k) {
  const int n = delta_k.n;
  if (n < 8 || delta_k.values.size() != static_cast<std::size_t>(n) * n * n) {
    throw ContractError("displacement_field: malformed spectral field");
  }
  pm::PmConfig cfg;
  cfg.box_length = delta_k.box_length;
  cfg.n_grid = n;
  cfg.r_cut = cfg.delta();

  std::vector<double> green(static_cast<std::size_t>(n) * n * n);
  std::vector<double> k_axis(static_cast<std::size_t>(n));
  std::vector<double> grad(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    k_axis[static_cast<std::size_t>(m)] = pm::wavenumber(m, n, cfg.box_length);
    grad[static_cast<std::size_t>(m)] = pm::gradient_multiplier(k_axis[static_cast<std::size_t>(m)], cfg).imag();
  }

  fft::PencilFft fft({n, n, n}, {1, 1});
  DisplacementField out{n, delta_k.box_length, {}, {}, {}};
  std::vector<double>* comps[3] = {&out.x, &out.y, &out.z};
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<fft::Complex> psi_k(delta_k.values.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const std::size_t idx = delta_k.index(i, j, k);
          const pm::Wavevector kv{k_axis[static_cast<std::size_t>(i)], k_axis[static_cast<std::size_t>(j)],
                                  k_axis[static_cast<std::size_t>(k)]};
          const int m = axis == 0 ? i : (axis == 1 ? j : k);
          // psi = -grad(phi), phi = G delta, grad -> i D.
          const double g = pm::influence_function(kv, cfg);
          psi_k[idx] = delta_k.values[idx] * std::complex<double>(0.0, -grad[static_cast<std::size_t>(m)] * g);
        }
      }
    }
    const auto spectrum = fft.scatter(psi_k, fft.spectral_layout());
    *comps[axis] = fft.gather_real(fft.inverse(spectrum));
  }
  return out;
}

ParticleStore zeldovich_displace(const SpectralField& delta_k, double a, const CosmologyParams& cosmo,
                                 double max_displacement, ZeldovichStats* stats) {
  cosmo.validate();
  if (!(a > 0.0 && a <= 1.0)) {
    throw DomainError("zeldovich_displace: scale factor must lie in (0, 1]");
  }
  const DisplacementField psi = displacement_field(delta_k);
  const int n = delta_k.n;
  const double L = delta_k.box_length;
  const double spacing = L / n;
  const double D = growth_factor(a, cosmo);
  const double momentum_factor = a * a * growth_rate(a, cosmo) * hubble_rate(a, cosmo) * D;
  const double mass = particle_mass(cosmo, L, static_cast<double>(n) * n * n);

  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  ParticleStore p;
  p.resize(total);
  double max_disp = 0.0;
#pragma omp parallel for schedule(static) reduction(max : max_disp)
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const std::size_t idx = delta_k.index(i, j, k);
        const double dx = D * psi.x[idx];
        const double dy = D * psi.y[idx];
        const double dz = D * psi.z[idx];
        max_disp = std::max(max_disp, std::sqrt(dx * dx + dy * dy + dz * dz));
        p.x[idx] = domain::wrap(i * spacing + dx, L);
        p.y[idx] = domain::wrap(j * spacing + dy, L);
        p.z[idx] = domain::wrap(k * spacing + dz, L);
        p.px[idx] = momentum_factor * psi.x[idx];
        p.py[idx] = momentum_factor * psi.y[idx];
        p.pz[idx] = momentum_factor * psi.z[idx];
        p.mass[idx] = mass;
        p.id[idx] = idx;
        p.status[idx] = Status::active;
      }
    }
  }
  if (stats != nullptr) {
    stats->max_displacement = max_disp;
    stats->lattice_spacing = spacing;
  }
  if (max_disp > max_displacement) {
    std::ostringstream msg;
    msg << "Zel'dovich displacement " << max_disp << " Mpc exceeds the allowed " << max_displacement << " Mpc";
    throw NumericError(msg.str());
  }
  return p;
}

}  // namespace hacc::ic
