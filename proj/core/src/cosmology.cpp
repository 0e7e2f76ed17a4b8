#include "hacc/cosmology.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/numeric/odeint.hpp>

#include "hacc/errors.hpp"

namespace hacc {

namespace {

void require_scale_factor(double a, const char* what) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError(std::string(what) + ": scale factor must be positive, got " + std::to_string(a));
  }
}

template <class F>
double integrate_in_a(F&& integrand, double a0, double a1, const char* what) {
  require_scale_factor(a0, what);
  require_scale_factor(a1, what);
  if (a1 < a0) {
    return -integrate_in_a(integrand, a1, a0, what);
  }
  if (a1 == a0) {
    return 0.0;
  }
  // Fixed 20-point Gauss-Legendre on geometric panels no wider than a factor
  // e^0.25 in a; the integrands are smooth powers of a there, so this is at
  // machine precision.
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log(a1 / a0) / 0.25)));
  double value = 0.0;
  double lo = a0;
  for (int i = 1; i <= panels; ++i) {
    const double hi = (i == panels) ? a1 : a0 * std::pow(a1 / a0, static_cast<double>(i) / panels);
    value += boost::math::quadrature::gauss<double, 20>::integrate(integrand, lo, hi);
    lo = hi;
  }
  if (!std::isfinite(value)) {
    throw NumericError(std::string(what) + ": quadrature produced a non-finite value");
  }
  return value;
}

struct GrowthState {
  double d_at_a;
  double dprime_at_a;  // dD/dlna
  double d_today;
};

// Linear growth ODE in x = ln a:
//   D'' + (2 + dlnH/dlna) D' - 1.5 Omega_m(a) D = 0
// started on the matter-dominated growing mode D = a.
GrowthState integrate_growth(double a, const CosmologyParams& cosmo) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;

  const double om = cosmo.omega_m;
  const double ol = cosmo.omega_lambda;
  auto rhs = [om, ol](const State& y, State& dy, double x) {
    const double a3 = std::exp(-3.0 * x);
    const double e2 = om * a3 + ol;
    const double omega_m_a = om * a3 / e2;
    const double dlnh = -1.5 * omega_m_a;
    dy[0] = y[1];
    dy[1] = -(2.0 + dlnh) * y[1] + 1.5 * omega_m_a * y[0];
  };

  const double a_init = std::min(1e-5, 1e-3 * a);
  State y{a_init, a_init};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(1e-13, 1e-13);

  GrowthState out{};
  const double x_init = std::log(a_init);
  const double x_a = std::log(a);
  try {
    odeint::integrate_adaptive(stepper, rhs, y, x_init, x_a, 1e-3);
    out.d_at_a = y[0];
    out.dprime_at_a = y[1];
    if (a < 1.0) {
      odeint::integrate_adaptive(stepper, rhs, y, x_a, 0.0, 1e-3);
    }
    out.d_today = y[0];
  } catch (const std::exception& e) {
    throw NumericError(std::string("growth_factor: integration failed: ") + e.what());
  }
  if (!std::isfinite(out.d_at_a) || !std::isfinite(out.d_today) || out.d_today <= 0.0) {
    throw NumericError("growth_factor: integration did not converge");
  }
  return out;
}

}  // namespace

CosmologyParams CosmologyParams::flat(double omega_m, double h) {
  CosmologyParams c;
  c.omega_m = omega_m;
  c.omega_lambda = 1.0 - omega_m;
  c.h = h;
  return c;
}

void CosmologyParams::validate() const {
  if (!(omega_m > 0.0)) {
    throw ConfigError("cosmology: omega_m must be positive");
  }
  if (!(h > 0.0)) {
    throw ConfigError("cosmology: h must be positive");
  }
  if (std::abs(omega_m + omega_lambda - 1.0) > 1e-12) {
    throw ConfigError("cosmology: only flat models are supported (omega_m + omega_lambda != 1)");
  }
}

double CosmologyParams::G() const {
  return 3.0 / (8.0 * std::numbers::pi * rho_crit());
}

Background Background::from_redshift(double z) {
  if (!(z > -1.0)) {
    throw DomainError("Background: redshift must exceed -1");
  }
  return Background{1.0 / (1.0 + z)};
}

double hubble_rate(double a, const CosmologyParams& cosmo) {
  require_scale_factor(a, "hubble_rate");
  return std::sqrt(cosmo.omega_m / (a * a * a) + cosmo.omega_lambda);
}

double particle_mass(const CosmologyParams& cosmo, double box_length, double n_particles) {
  if (!(box_length > 0.0) || !(n_particles > 0.0)) {
    throw ContractError("particle_mass: box length and particle count must be positive");
  }
  return cosmo.rho_matter() * box_length * box_length * box_length / n_particles;
}

double growth_factor(double a, const CosmologyParams& cosmo) {
  require_scale_factor(a, "growth_factor");
  const GrowthState g = integrate_growth(a, cosmo);
  return g.d_at_a / g.d_today;
}

double growth_rate(double a, const CosmologyParams& cosmo) {
  require_scale_factor(a, "growth_rate");
  const GrowthState g = integrate_growth(a, cosmo);
  return g.dprime_at_a / g.d_at_a;
}

double drift_factor(double a0, double a1, const CosmologyParams& cosmo) {
  return integrate_in_a([&](double a) { return 1.0 / (a * a * a * hubble_rate(a, cosmo)); }, a0, a1,
                        "drift_factor");
}

double kick_factor(double a0, double a1, const CosmologyParams& cosmo) {
  return integrate_in_a([&](double a) { return 1.0 / (a * hubble_rate(a, cosmo)); }, a0, a1,
                        "kick_factor");
}

double comoving_kick_factor(double a0, double a1, const CosmologyParams& cosmo) {
  return integrate_in_a([&](double a) { return 1.0 / (a * a * hubble_rate(a, cosmo)); }, a0, a1,
                        "comoving_kick_factor");
}

}  // namespace hacc
