#pragma once

// Background cosmology for a flat matter + Lambda universe.
//
// Internal units: lengths in Mpc, masses in M_sun and time in units of 1/H0,
// so that H0 == 1. Newton's constant follows from rho_crit = 3 H0^2 / (8 pi G).

namespace hacc {

// Critical density today in h^2 M_sun / Mpc^3.
inline constexpr double kRhoCritH2 = 2.775e11;

struct CosmologyParams {
  double omega_m = 0.265;
  double omega_lambda = 0.735;
  double h = 0.71;

  static CosmologyParams flat(double omega_m, double h);

  // Throws ConfigError unless omega_m > 0, h > 0 and omega_m + omega_lambda == 1.
  void validate() const;

  // Critical density today, M_sun / Mpc^3.
  [[nodiscard]] double rho_crit() const { return kRhoCritH2 * h * h; }
  // Mean comoving matter density, M_sun / Mpc^3.
  [[nodiscard]] double rho_matter() const { return omega_m * rho_crit(); }
  // Newton's constant in Mpc^3 / (M_sun (1/H0)^2).
  [[nodiscard]] double G() const;
};

struct Background {
  double a = 1.0;

  static Background from_redshift(double z);
  [[nodiscard]] double redshift() const { return 1.0 / a - 1.0; }
};

// H(a) / H0 for the flat LCDM closure. Throws DomainError for a <= 0.
double hubble_rate(double a, const CosmologyParams& cosmo);

// Mean particle mass rho_crit * omega_m * L^3 / N in M_sun.
double particle_mass(const CosmologyParams& cosmo, double box_length, double n_particles);

// Linear growth factor normalised to D(1) == 1.
double growth_factor(double a, const CosmologyParams& cosmo);

// Logarithmic growth rate f = dlnD/dlna.
double growth_rate(double a, const CosmologyParams& cosmo);

// Integral of da / (a^3 H) from a0 to a1. Position update weight for p = a^2 dx/dt.
double drift_factor(double a0, double a1, const CosmologyParams& cosmo);

// Integral of da / (a H) from a0 to a1, i.e. elapsed time dt.
double kick_factor(double a0, double a1, const CosmologyParams& cosmo);

// Integral of da / (a^2 H) from a0 to a1. Momentum update weight for forces
// that carry the 1/a of the comoving Poisson source (see pm::solve_forces).
double comoving_kick_factor(double a0, double a1, const CosmologyParams& cosmo);

}  // namespace hacc
