#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hacc/errors.hpp"
#include "hacc/pm/cic.hpp"
#include "hacc/pm/kernels.hpp"
#include "hacc/pm/poisson.hpp"
#include "oracle_values.hpp"

using namespace hacc;
using namespace hacc::pm;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("pm") {

TEST_CASE("filter factor") {
  const PmConfig cfg{64.0, 64};
  CHECK(filter_axis(0.0, cfg) == 1.0);
  const double k = kPi / cfg.delta();
  CHECK(filter_axis(k, cfg) == doctest::Approx(std::exp(-kPi * kPi * 0.64 / 4.0) * std::pow(2.0 / kPi, 3)));
  PmConfig raw = cfg;
  raw.sigma = 0.0;
  raw.n_s = 0.0;
  CHECK(filter_axis(k, raw) == 1.0);
  CHECK(filter_kernel({k, 0.0, 0.0}, cfg) == doctest::Approx(filter_axis(k, cfg)));
}

TEST_CASE("influence function and gradient approach the continuum") {
  const PmConfig cfg{64.0, 64};
  for (double kd : {0.05, 0.1, 0.2}) {
    const double k = kd / cfg.delta();
    // sixth order: relative error ~ (k delta)^6
    CHECK(std::abs(influence_function({k, 0.0, 0.0}, cfg) * k * k + 1.0) < 0.1 * std::pow(kd, 6));
    // fourth order: relative error (k delta)^4 / 30
    CHECK(std::abs(gradient_multiplier(k, cfg).imag() / k - 1.0) < std::pow(kd, 4) / 25.0);
    CHECK(gradient_multiplier(k, cfg).real() == 0.0);
  }
  CHECK(influence_function({0.0, 0.0, 0.0}, cfg) == 0.0);
  CHECK(wavenumber(32, 64, 64.0) == doctest::Approx(kPi));
  CHECK(wavenumber(63, 64, 64.0) == doctest::Approx(-2.0 * kPi / 64.0));
}

TEST_CASE("CIC deposit weights") {
  const PmConfig cfg{8.0, 8};
  const std::vector<double> x{1.25}, y{7.5}, z{3.0}, m{2.0};
  const Grid3 g = deposit_mass(x, y, z, m, cfg);
  CHECK(g.sum() == doctest::Approx(2.0));
  CHECK(g(1, 7, 3) == doctest::Approx(2.0 * 0.75 * 0.5));
  CHECK(g(2, 0, 3) == doctest::Approx(2.0 * 0.25 * 0.5));
  CHECK(g(1, 0, 4) == doctest::Approx(0.0));
}

TEST_CASE("CIC deposit skips passive particles and rejects NaN") {
  const PmConfig cfg{8.0, 8};
  ParticleStore p;
  p.push_back({1, 1, 1, 0, 0, 0, 1.0, 0, Status::active});
  p.push_back({2, 2, 2, 0, 0, 0, 5.0, 1, Status::passive});
  CHECK(deposit_mass(p, cfg).sum() == doctest::Approx(1.0));
  const auto d = cic_deposit(p, cfg);
  CHECK(d.mean_density == doctest::Approx(1.0 / 512.0));
  CHECK(d.delta.sum() == doctest::Approx(0.0).epsilon(1e-12));
  p.x[0] = std::nan("");
  CHECK_THROWS_AS(deposit_mass(p, cfg), ContractError);
  CHECK_THROWS_AS(density_contrast(Grid3(8), cfg), ContractError);
}

TEST_CASE("CIC interpolation is exact for linear fields inside the box") {
  const PmConfig cfg{16.0, 16};
  ForceGrids f;
  for (auto& c : f.component) {
    c = Grid3(16);
  }
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      for (int k = 0; k < 16; ++k) {
        f.component[0](i, j, k) = 2.0 * i - j + 0.5 * k;
        f.component[1](i, j, k) = 7.0;
      }
    }
  }
  const std::vector<double> x{3.3, 10.9}, y{4.25, 1.5}, z{8.0, 12.75};
  const VectorField v = cic_interpolate(f, x, y, z, cfg);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(v.x[i] == doctest::Approx(2.0 * x[i] - y[i] + 0.5 * z[i]));
    CHECK(v.y[i] == doctest::Approx(7.0));
    CHECK(v.z[i] == 0.0);
  }
}

TEST_CASE("single Fourier mode against the continuum solution") {
  const PmConfig cfg{64.0, 64};
  PmSolver solver(cfg);
  const double kx = 2.0 * kPi / 64.0;
  DensityGrid d{Grid3(64), 3.0};
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      for (int k = 0; k < 64; ++k) {
        d.delta(i, j, k) = 0.01 * std::cos(kx * i);
      }
    }
  }
  const double a = 0.5;
  const double G = 0.7;
  const ForceGrids f = solver.solve_forces(d, Background{a}, G);
  const double amp = -4.0 * kPi * G * 3.0 * 0.01 / (a * kx) * filter_axis(kx, cfg);
  double err = 0.0;
  for (int i = 0; i < 64; ++i) {
    err = std::max(err, std::abs(f.component[0](i, 5, 9) - amp * std::sin(kx * i)));
    CHECK(std::abs(f.component[1](i, 5, 9)) < 1e-12 * std::abs(amp));
  }
  CHECK(err < 1e-5 * std::abs(amp));
  CHECK(solver.fft_invocations() == 4);
}

TEST_CASE("far field of a point mass against the Ewald sum") {
  const PmConfig cfg{oracle::kEwaldBox, 64};
  PmSolver solver(cfg);
  const std::array<double, 3> src{20.3, 31.7, 7.45};
  const ForceGrids f = solver.point_mass_field(src, 1.0, 1.0);
  for (const auto& row : oracle::kEwald) {
    const std::vector<double> x{src[0] + row.r[0]}, y{src[1] + row.r[1]}, z{src[2] + row.r[2]};
    const VectorField g = cic_interpolate(f, x, y, z, cfg);
    const double ref = std::hypot(row.g[0], row.g[1], row.g[2]);
    const double err = std::hypot(g.x[0] - row.g[0], g.y[0] - row.g[1], g.z[0] - row.g[2]);
    CAPTURE(row.r[0]);
    CHECK(err < 0.01 * ref);
  }
}

TEST_CASE("configuration checks") {
  CHECK_THROWS_AS(PmSolver(PmConfig{64.0, 4}), ConfigError);
  CHECK_THROWS_AS(PmSolver(PmConfig{-1.0, 16}), ConfigError);
  PmConfig wide{64.0, 16};
  wide.r_cut = 16.0;
  CHECK_THROWS_AS(wide.validate(), ConfigError);
  PmConfig neg{64.0, 16};
  neg.sigma = -0.1;
  CHECK_THROWS_AS(neg.validate(), ConfigError);
  CHECK(PmConfig{64.0, 16}.cutoff() == doctest::Approx(12.0));
  PmSolver s(PmConfig{16.0, 16});
  DensityGrid bad{Grid3(16, 1.0), 1.0};
  CHECK_THROWS_AS((void)s.solve_forces(bad, Background{1.0}, 1.0), ContractError);
  DensityGrid ok{Grid3(16), 1.0};
  CHECK_THROWS_AS((void)s.solve_forces(ok, Background{0.0}, 1.0), DomainError);
}

}
