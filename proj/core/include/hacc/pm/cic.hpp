#pragma once

#include <span>

#include "hacc/particles.hpp"
#include "hacc/pm/grid.hpp"

namespace hacc::pm {

// Cloud-in-cell mass assignment. Grid node (i,j,k) sits at (i,j,k)*delta;
// positions are wrapped periodically into the box. Throws ContractError on
// non-finite positions.
Grid3 deposit_mass(std::span<const double> x, std::span<const double> y, std::span<const double> z,
                   std::span<const double> mass, const PmConfig& cfg);

// Deposits ACTIVE particles only.
Grid3 deposit_mass(const ParticleStore& particles, const PmConfig& cfg);

// Converts a mass grid to density contrast rho/<rho> - 1. Throws ContractError
// when the grid holds no mass.
DensityGrid density_contrast(const Grid3& mass, const PmConfig& cfg);

// deposit_mass followed by density_contrast.
DensityGrid cic_deposit(const ParticleStore& particles, const PmConfig& cfg);

// Trilinear gather with the same weights as the deposit.
VectorField cic_interpolate(const ForceGrids& forces, std::span<const double> x, std::span<const double> y,
                            std::span<const double> z, const PmConfig& cfg);

}  // namespace hacc::pm
