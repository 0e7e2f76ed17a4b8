#pragma once

#include <limits>

#include "hacc/cosmology.hpp"
#include "hacc/ic/gaussian_field.hpp"
#include "hacc/particles.hpp"

namespace hacc::ic {

// Displacement field psi = -grad(inverse Laplacian of delta) sampled on the
// lattice, built with the influence function and gradient multipliers of the
// PM solver. Components are n^3 row-major grids.
struct DisplacementField {
  int n = 0;
  double box_length = 0.0;
  std::vector<double> x, y, z;
};

DisplacementField displacement_field(const SpectralField& delta_k);

struct ZeldovichStats {
  double max_displacement = 0.0;  // Mpc
  double lattice_spacing = 0.0;   // Mpc
};

// One particle per lattice site q = (i,j,k) L/n, moved to x = q + D(a) psi(q)
// and given momentum p = a^2 dx/dt = a^2 f(a) H(a) D(a) psi(q). delta_k is
// the linear field at a = 1. Masses follow particle_mass; ids are the lattice
// index. Positions are wrapped into the box. Throws NumericError when the
// largest displacement exceeds max_displacement.
ParticleStore zeldovich_displace(const SpectralField& delta_k, double a, const CosmologyParams& cosmo,
                                 double max_displacement = std::numeric_limits<double>::infinity(),
                                 ZeldovichStats* stats = nullptr);

}  // namespace hacc::ic
