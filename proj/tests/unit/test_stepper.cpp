#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hacc/errors.hpp"
#include "hacc/pm/kernels.hpp"
#include "hacc/stepper/stepper.hpp"

using namespace hacc;
using namespace hacc::stepper;

namespace {

constexpr double kPi = std::numbers::pi;

ForceSetup pair_forces() {
  ForceSetup f;
  f.kernel.r_cut = 10.0;
  f.kernel.epsilon = 0.01;
  return f;
}

ParticleStore bound_pair(const CosmologyParams& c) {
  // masses chosen so that G m is of order one in internal units
  const double m = 1.0 / c.G();
  ParticleStore p;
  p.push_back({1.0, 1.0, 1.0, 0.0, 0.3, 0.0, m, 0, Status::active});
  p.push_back({2.0, 1.0, 1.0, 0.0, -0.3, 0.1, m, 1, Status::active});
  return p;
}

std::array<double, 12> state(const ParticleStore& p) {
  return {p.x[0], p.y[0], p.z[0], p.x[1], p.y[1], p.z[1], p.px[0], p.py[0], p.pz[0], p.px[1], p.py[1], p.pz[1]};
}

void set_state(ParticleStore& p, const std::array<double, 12>& s) {
  p.x[0] = s[0]; p.y[0] = s[1]; p.z[0] = s[2];
  p.x[1] = s[3]; p.y[1] = s[4]; p.z[1] = s[5];
  p.px[0] = s[6]; p.py[0] = s[7]; p.pz[0] = s[8];
  p.px[1] = s[9]; p.py[1] = s[10]; p.pz[1] = s[11];
}

// Ids keep the output in a fixed order even though the tree reorders particles.
std::array<double, 12> map_pair(const std::array<double, 12>& s, const ForceSetup& f, double a0, double a1) {
  ParticleStore p = bound_pair(f.cosmo);
  set_state(p, s);
  sub_cycle(p, f, {}, a0, a1);
  if (p.id[0] != 0) {
    std::swap(p.x[0], p.x[1]);
    std::swap(p.y[0], p.y[1]);
    std::swap(p.z[0], p.z[1]);
    std::swap(p.px[0], p.px[1]);
    std::swap(p.py[0], p.py[1]);
    std::swap(p.pz[0], p.pz[1]);
  }
  return state(p);
}

double determinant(std::array<std::array<double, 12>, 12> m) {
  double det = 1.0;
  for (std::size_t c = 0; c < 12; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < 12; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) {
        piv = r;
      }
    }
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < 12; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < 12; ++k) {
        m[r][k] -= f * m[c][k];
      }
    }
  }
  return det;
}

}  // namespace

TEST_SUITE("stepper") {

TEST_CASE("schedule") {
  StepperConfig c;
  c.a_in = 0.1;
  c.a_final = 1.0;
  c.n_steps = 9;
  CHECK(c.a_at(0) == 0.1);
  CHECK(c.a_at(3) == doctest::Approx(0.4));
  CHECK(c.a_at(9) == 1.0);
  c.n_c = 33;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.n_c = 5;
  c.a_final = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("free streaming and zero-width kicks") {
  const CosmologyParams c;
  ParticleStore p;
  p.push_back({1.0, 2.0, 3.0, 0.5, -1.0, 2.0, 1.0, 0, Status::active});
  ForceSetup none;
  sub_cycle(p, none, {}, 0.2, 0.3);
  const double d = drift_factor(0.2, 0.3, c);
  CHECK(p.x[0] == doctest::Approx(1.0 + 0.5 * d));
  CHECK(p.z[0] == doctest::Approx(3.0 + 2.0 * d));
  CHECK(p.px[0] == 0.5);

  VectorField acc(1);
  acc.x[0] = 5.0;
  long_range_kick(p, acc, 0.5, 0.4, 0.4, c);
  CHECK(p.px[0] == 0.5);
  long_range_kick(p, acc, 0.5, 0.4, 0.5, c);
  CHECK(p.px[0] == doctest::Approx(0.5 + 5.0 * 0.5 * comoving_kick_factor(0.4, 0.5, c)));
  CHECK_THROWS_AS(long_range_kick(p, VectorField(2), 0.5, 0.4, 0.5, c), ContractError);
}

TEST_CASE("uniform lattice feels no long-range force") {
  const int n = 16;
  const double box = 32.0;
  ParticleStore p;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        p.push_back({i * 2.0, j * 2.0, k * 2.0, 0, 0, 0, 1.0, static_cast<std::uint64_t>(p.size()), Status::active});
      }
    }
  }
  pm::PmSolver solver(pm::PmConfig{box, 16});
  auto set = domain::assign_and_overload(p, domain::decompose(box, {1, 1, 1}, 1), 0.0);
  LongRangeForce lr(solver);
  lr.compute(set, 0.5, 1.0);
  const VectorField acc = lr.interpolate(set.ranks[0]);
  double worst = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    worst = std::max(worst, std::hypot(acc.x[i], acc.y[i], acc.z[i]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("single-mode long-range kick matches linear response") {
  const int n = 32;
  const double box = 64.0;
  const double A = 1e-3;
  const double k0 = 2.0 * kPi / box;
  const CosmologyParams c;
  const double mass = particle_mass(c, box, static_cast<double>(n) * n * n);
  ParticleStore p;
  const double q_spacing = box / n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        // x = q + (A/k) sin(kq) gives delta = -A cos(kq) to first order.
        // Cell-centred so the CIC deposit is linear in the displacement.
        const double q = (i + 0.5) * q_spacing;
        p.push_back({q + A / k0 * std::sin(k0 * q), (j + 0.5) * q_spacing, (k + 0.5) * q_spacing, 0, 0, 0, mass,
                     static_cast<std::uint64_t>(p.size()), Status::active});
      }
    }
  }
  const pm::PmConfig cfg{box, n};
  pm::PmSolver solver(cfg);
  auto set = domain::assign_and_overload(p, domain::decompose(box, {1, 1, 1}, 1), 0.0);
  LongRangeForce lr(solver);
  const double a = 0.5;
  lr.compute(set, a, c.G());
  ParticleStore& s = set.ranks[0];
  ParticleStore before = s;
  long_range_kick(s, lr.interpolate(s), a, a, 0.55, c);
  // g = 4 pi G rho A sin(kx) / (a k), times the filter, the deposit sinc and
  // the linear interpolation response at cell centres
  const double half = k0 * cfg.delta() / 2.0;
  const double window = std::sin(half) / half * std::cos(half);
  const double g0 = 4.0 * kPi * c.G() * c.rho_matter() * A / (a * k0) * pm::filter_axis(k0, cfg) * window;
  const double w = a * comoving_kick_factor(a, 0.55, c);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double expect = g0 * std::sin(k0 * before.x[i]) * w;
    worst = std::max(worst, std::abs(s.px[i] - expect));
  }
  CHECK(worst < 0.01 * g0 * w);
}

TEST_CASE("sub-cycle is symplectic") {
  ForceSetup f = pair_forces();
  const auto s0 = state(bound_pair(f.cosmo));
  std::array<std::array<double, 12>, 12> jac{};
  const double h = 1e-6;
  for (std::size_t j = 0; j < 12; ++j) {
    auto plus = s0;
    auto minus = s0;
    plus[j] += h;
    minus[j] -= h;
    const auto fp = map_pair(plus, f, 0.5, 0.52);
    const auto fm = map_pair(minus, f, 0.5, 0.52);
    for (std::size_t i = 0; i < 12; ++i) {
      jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
    }
  }
  // make sure the map is not trivially a shear
  const auto out = map_pair(s0, f, 0.5, 0.52);
  CHECK(std::abs(out[6] - s0[6]) > 1e-3);
  CHECK(determinant(jac) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sub-cycle is time reversible") {
  ForceSetup f = pair_forces();
  const auto s0 = state(bound_pair(f.cosmo));
  const auto there = map_pair(s0, f, 0.5, 0.55);
  const auto back = map_pair(there, f, 0.55, 0.5);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(back[i] == doctest::Approx(s0[i]).epsilon(1e-10));
  }
}

TEST_CASE("full step without forces is a pure drift and solves PM once per step") {
  const double box = 32.0;
  ParticleStore p;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, box);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    const double z = u(rng);
    p.push_back({x, y, z, 1.0, 0.0, -0.5, 1.0, static_cast<std::uint64_t>(i), Status::active});
  }
  Communicator comm(1);
  StepperConfig sc;
  sc.n_c = 1;
  sc.a_in = 0.5;
  sc.n_steps = 3;
  ForceSetup none;
  Stepper drift(sc, none, comm);
  auto set = domain::assign_and_overload(p, domain::decompose(box, {1, 1, 1}, 1), 0.0);
  for (int s = 0; s < 3; ++s) {
    drift.step(set, s);
  }
  const ParticleStore out = domain::collect_active(set);
  const double d = drift_factor(0.5, 1.0, CosmologyParams{});
  CHECK(domain::wrap(out.x[7], box) == doctest::Approx(domain::wrap(p.x[7] + d, box)));
  CHECK(domain::wrap(out.z[7], box) == doctest::Approx(domain::wrap(p.z[7] - 0.5 * d, box)));

  pm::PmSolver solver(pm::PmConfig{box, 16});
  ForceSetup with_pm;
  with_pm.pm = &solver;
  Stepper pm_only(sc, with_pm, comm);
  auto set2 = domain::assign_and_overload(p, domain::decompose(box, {1, 1, 1}, 1), 0.0);
  for (int s = 0; s < 3; ++s) {
    pm_only.step(set2, s);
  }
  CHECK(pm_only.pm_solves() == 4);
  CHECK(pm_only.last_step_times().substeps == 1);
  CHECK_THROWS_AS(pm_only.step(set2, 3), ContractError);
}

}
