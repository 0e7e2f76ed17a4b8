#include <cmath>
#include <thread>

#include "doctest.h"
#include "hacc/comm.hpp"
#include "hacc/cosmology.hpp"
#include "hacc/errors.hpp"
#include "hacc/particles.hpp"
#include "hacc/units.hpp"
#include "oracle_values.hpp"

using namespace hacc;

TEST_SUITE("core") {

TEST_CASE("hubble rate and growth against the ODE oracle") {
  const auto c = CosmologyParams::flat(oracle::kOmegaM, oracle::kH);
  for (const auto& row : oracle::kGrowth) {
    CAPTURE(row.a);
    CHECK(hubble_rate(row.a, c) == doctest::Approx(row.hubble).epsilon(1e-13));
    CHECK(growth_factor(row.a, c) == doctest::Approx(row.growth).epsilon(1e-8));
    CHECK(growth_rate(row.a, c) == doctest::Approx(row.rate).epsilon(1e-7));
  }
}

TEST_CASE("time integrals against adaptive quadrature") {
  const auto c = CosmologyParams::flat(oracle::kOmegaM, oracle::kH);
  for (const auto& row : oracle::kIntegrals) {
    CAPTURE(row.a0);
    CAPTURE(row.a1);
    CHECK(drift_factor(row.a0, row.a1, c) == doctest::Approx(row.drift).epsilon(1e-11));
    CHECK(kick_factor(row.a0, row.a1, c) == doctest::Approx(row.kick).epsilon(1e-11));
    CHECK(comoving_kick_factor(row.a0, row.a1, c) == doctest::Approx(row.comoving_kick).epsilon(1e-11));
  }
}

TEST_CASE("integrals are additive and antisymmetric") {
  const CosmologyParams c;
  const double whole = drift_factor(0.1, 0.9, c);
  CHECK(drift_factor(0.1, 0.4, c) + drift_factor(0.4, 0.9, c) == doctest::Approx(whole).epsilon(1e-13));
  CHECK(drift_factor(0.9, 0.1, c) == doctest::Approx(-whole).epsilon(1e-13));
  CHECK(kick_factor(0.3, 0.3, c) == 0.0);
}

TEST_CASE("matter-dominated limit") {
  const auto eds = CosmologyParams::flat(1.0, 0.7);
  // D = a, H = a^-3/2, drift = int a^-3/2 da
  CHECK(growth_factor(0.3, eds) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(growth_rate(0.3, eds) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(drift_factor(0.25, 1.0, eds) == doctest::Approx(2.0 * (1.0 / std::sqrt(0.25) - 1.0)).epsilon(1e-12));
}

TEST_CASE("Newton's constant matches the physical value") {
  // G = 4.30091727e-9 Mpc (km/s)^2 / M_sun, H0 = 100 h km/s/Mpc.
  const CosmologyParams c = CosmologyParams::flat(0.3, 0.7);
  const double g_physical = 4.30091727e-9 / (70.0 * 70.0);
  CHECK(c.G() == doctest::Approx(g_physical).epsilon(1e-3));
  CHECK(4.0 * std::acos(-1.0) * c.G() * c.rho_crit() == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("particle mass of the large test run, quoted in h^-1 M_sun") {
  const auto c = CosmologyParams::flat(0.265, 0.71);
  const double n = 10240.0 * 10240.0 * 10240.0;
  const double m = particle_mass(c, 9140.0, n);
  CHECK(m * c.h == doctest::Approx(1.9e10).epsilon(0.1));
}

TEST_CASE("invalid cosmology and scale factors") {
  CHECK_THROWS_AS(CosmologyParams::flat(0.0, 0.7).validate(), ConfigError);
  CHECK_THROWS_AS(CosmologyParams::flat(0.3, -1.0).validate(), ConfigError);
  CosmologyParams open{0.3, 0.5, 0.7};
  CHECK_THROWS_AS(open.validate(), ConfigError);
  CHECK_THROWS_AS(hubble_rate(0.0, CosmologyParams{}), DomainError);
  CHECK_THROWS_AS(growth_factor(-1.0, CosmologyParams{}), DomainError);
}

TEST_CASE("unit conversions") {
  const UnitSystem u(0.7);
  // 1/H0 = 9.7779 / h Gyr
  CHECK(u.time_unit_seconds() / (3.15576e16) == doctest::Approx(9.777922 / 0.7).epsilon(1e-5));
  CHECK(u.velocity_from_internal(u.velocity_to_internal(123.0)) == doctest::Approx(123.0));
  CHECK(u.velocity_unit_km_s() == doctest::Approx(70.0));
  CHECK(Background::from_redshift(3.0).a == doctest::Approx(0.25));
}

TEST_CASE("particle store records") {
  ParticleStore p;
  p.push_back({1, 2, 3, 4, 5, 6, 7, 8, Status::active});
  p.push_back({9, 9, 9, 0, 0, 0, 1, 9, Status::passive});
  CHECK(p.size() == 2);
  CHECK(p.count(Status::active) == 1);
  const auto r = p.record(0);
  CHECK(r.z == 3);
  CHECK(r.id == 8);
  p.set(1, r);
  CHECK(p.id[1] == 8);
  CHECK(p.count(Status::passive) == 0);
}

TEST_CASE("communicator delivers in order per pair") {
  Communicator comm(3);
  const std::vector<int> a{1, 2, 3};
  const std::vector<int> b{4};
  comm.send_values<int>(0, 2, a);
  comm.send_values<int>(0, 2, b);
  comm.send_values<int>(1, 2, b);
  CHECK(comm.receive_values<int>(2, 1) == b);
  CHECK(comm.receive_values<int>(2, 0) == a);
  CHECK(comm.receive_values<int>(2, 0) == b);
  CHECK(comm.pending_total() == 0);
  CHECK_THROWS_AS(comm.send(0, 3, {}), ContractError);
}

TEST_CASE("communicator receive blocks until a message arrives") {
  Communicator comm(2);
  std::thread t([&] { comm.send_values<double>(1, 0, std::vector<double>{2.5}); });
  const auto got = comm.receive_values<double>(0, 1);
  t.join();
  REQUIRE(got.size() == 1);
  CHECK(got[0] == 2.5);
}

}
