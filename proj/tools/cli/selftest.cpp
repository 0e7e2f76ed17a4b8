#include "selftest.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "config.hpp"
#include "hacc/analysis/metrics.hpp"
#include "hacc/analysis/pair_force.hpp"
#include "hacc/cosmology.hpp"
#include "hacc/domain/overload.hpp"
#include "hacc/errors.hpp"
#include "hacc/fft/pencil_fft.hpp"
#include "hacc/pm/cic.hpp"
#include "hacc/pm/poisson.hpp"
#include "hacc/shortrange/fit.hpp"
#include "hacc/shortrange/forces.hpp"
#include "manifest.hpp"
#include "snapshot.hpp"

namespace hacc::cli {

namespace fs = std::filesystem;

namespace {

void add(SelftestReport& r, std::string property, double measured, double tolerance, bool at_least = false) {
  const bool pass = std::isfinite(measured) && (at_least ? measured >= tolerance : measured <= tolerance);
  r.rows.push_back({std::move(property), measured, tolerance, at_least, pass});
}

ParticleStore random_particles(std::size_t n, double box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, box);
  ParticleStore p;
  p.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    const double z = u(rng);
    p.push_back({x, y, z, 0.0, 0.0, 0.0, 1.0, i, Status::active});
  }
  return p;
}

// ---- UNIT ----

void unit_suite(SelftestReport& r) {
  {
    RunConfig cfg;
    cfg.n_steps = 7;
    cfg.seed = 99;
    cfg.mode = sr::ShortRangeMode::p3m_direct;
    std::istringstream in(cfg.echo());
    add(r, "config echo reparses identically", parse_config(in).echo() == cfg.echo() ? 0.0 : 1.0, 0.0);
  }
  {
    const ParticleStore p = random_particles(1000, 10.0, 7);
    const Snapshot s = make_snapshot(p, 10.0, 0.5, CosmologyParams{}, 7, 1);
    const auto bytes = encode_snapshot(s);
    const Snapshot back = decode_snapshot(bytes);
    add(r, "snapshot roundtrip byte mismatches", encode_snapshot(back) == bytes ? 0.0 : 1.0, 0.0);
  }
  add(r, "empty blob hash mismatch", git_blob_hash(std::string()) == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391" ? 0 : 1,
      0.0);
  {
    pm::PmConfig cfg{16.0, 16};
    const ParticleStore p = random_particles(500, 16.0, 3);
    const pm::Grid3 m = pm::deposit_mass(p, cfg);
    add(r, "CIC deposit mass conservation", std::abs(m.sum() - 500.0) / 500.0, 1e-12);
  }
  {
    const ParticleStore p = random_particles(4000, 32.0, 11);
    const auto geometry = domain::decompose(32.0, {2, 2, 2}, 8);
    auto set = domain::assign_and_overload(p, geometry, 2.0);
    Communicator comm(8);
    double lost = 0.0;
    for (int i = 0; i < 5; ++i) {
      domain::refresh_overload(set, comm);
      lost = std::max(lost, std::abs(static_cast<double>(set.active_total()) - 4000.0));
    }
    add(r, "ACTIVE count change over 5 refreshes", lost, 0.0);
    add(r, "overload invariant violations", domain::check_invariants(set).empty() ? 0.0 : 1.0, 0.0);
  }
}

// ---- ORACLE ----

double dft_error(const fft::Dims& d, fft::RankGrid grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = static_cast<std::size_t>(d[0]) * d[1] * d[2];
  std::vector<double> real(n);
  for (auto& v : real) {
    v = u(rng);
  }
  fft::PencilFft fft(d, grid);
  const auto spec = fft.gather(fft.forward(fft.scatter(real)));
  double err = 0.0;
  double scale = 0.0;
  const double tau = 2.0 * std::numbers::pi;
  for (int kx = 0; kx < d[0]; ++kx) {
    for (int ky = 0; ky < d[1]; ++ky) {
      for (int kz = 0; kz < d[2]; ++kz) {
        std::complex<double> sum = 0.0;
        for (int x = 0; x < d[0]; ++x) {
          for (int y = 0; y < d[1]; ++y) {
            for (int z = 0; z < d[2]; ++z) {
              const double ph = -tau * (double(kx * x) / d[0] + double(ky * y) / d[1] + double(kz * z) / d[2]);
              sum += real[(static_cast<std::size_t>(x) * d[1] + y) * d[2] + z] * std::polar(1.0, ph);
            }
          }
        }
        const auto got = spec[(static_cast<std::size_t>(kx) * d[1] + ky) * d[2] + kz];
        err = std::max(err, std::abs(got - sum));
        scale = std::max(scale, std::abs(sum));
      }
    }
  }
  return err / scale;
}

template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) {
    s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

// RK4 on D'' + (3/a + H'/H) D' = 1.5 omega_m D / (a^5 H^2), growing mode D = a deep in matter domination.
double growth_ode(double a_end, const CosmologyParams& c) {
  auto rhs = [&](double a, double d, double dp) {
    const double h2 = c.omega_m / (a * a * a) + c.omega_lambda;
    const double dlnh = -1.5 * c.omega_m / (a * a * a * a) / h2;
    return 1.5 * c.omega_m * d / (a * a * a * a * a * h2) - (3.0 / a + dlnh) * dp;
  };
  double a = 1e-3;
  double d = a;
  double dp = 1.0;
  const int steps = 20000;
  const double h = (a_end - a) / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1d = dp;
    const double k1v = rhs(a, d, dp);
    const double k2d = dp + 0.5 * h * k1v;
    const double k2v = rhs(a + 0.5 * h, d + 0.5 * h * k1d, k2d);
    const double k3d = dp + 0.5 * h * k2v;
    const double k3v = rhs(a + 0.5 * h, d + 0.5 * h * k2d, k3d);
    const double k4d = dp + h * k3v;
    const double k4v = rhs(a + h, d + h * k3d, k4d);
    d += h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d);
    dp += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    a += h;
  }
  return d;
}

// O(N^2) minimum-image cutoff sum.
VectorField direct_short_range(const ParticleStore& p, const sr::ShortRangeKernel& k, double box) {
  const std::size_t n = p.size();
  VectorField acc(n);
  auto wrap = [box](double d) { return d - box * std::round(d / box); };
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dx = wrap(p.x[j] - p.x[i]);
      const double dy = wrap(p.y[j] - p.y[i]);
      const double dz = wrap(p.z[j] - p.z[i]);
      const double f = p.mass[j] * sr::eval_f_sr(dx * dx + dy * dy + dz * dz, k);
      ax += dx * f;
      ay += dy * f;
      az += dz * f;
    }
    acc.x[i] = ax;
    acc.y[i] = ay;
    acc.z[i] = az;
  }
  return acc;
}

double max_relative(const VectorField& got, const VectorField& ref) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double norm = std::hypot(ref.x[i], ref.y[i], ref.z[i]);
    if (norm == 0.0) {
      continue;
    }
    worst = std::max(worst, std::hypot(got.x[i] - ref.x[i], got.y[i] - ref.y[i], got.z[i] - ref.z[i]) / norm);
  }
  return worst;
}

void oracle_suite(SelftestReport& r) {
  add(r, "pencil FFT vs direct DFT, 8^3 on 2x2 ranks", dft_error({8, 8, 8}, {2, 2}, 1), 1e-10);
  add(r, "pencil FFT vs direct DFT, 12^3 on 4x2 ranks", dft_error({12, 12, 12}, {4, 2}, 2), 1e-10);

  const CosmologyParams c = CosmologyParams::flat(0.265, 0.71);
  auto inv_h = [&](double a) { return 1.0 / std::sqrt(c.omega_m / (a * a * a) + c.omega_lambda); };
  const double drift_ref = simpson([&](double a) { return inv_h(a) / (a * a * a); }, 0.04, 1.0, 20000);
  add(r, "drift factor vs Simpson", std::abs(drift_factor(0.04, 1.0, c) / drift_ref - 1.0), 1e-10);
  const double kick_ref = simpson([&](double a) { return inv_h(a) / (a * a); }, 0.04, 1.0, 20000);
  add(r, "comoving kick factor vs Simpson", std::abs(comoving_kick_factor(0.04, 1.0, c) / kick_ref - 1.0), 1e-10);

  const double d1 = growth_ode(1.0, c);
  double growth_err = 0.0;
  for (double a : {0.02, 0.1, 0.5}) {
    growth_err = std::max(growth_err, std::abs(growth_factor(a, c) / (growth_ode(a, c) / d1) - 1.0));
  }
  add(r, "growth factor vs growth ODE", growth_err, 1e-6);

  pm::PmSolver solver(pm::PmConfig{32.0, 32});
  sr::GridForceFitOptions opt;
  opt.n_samples = 3000;
  const sr::ShortRangeKernel kernel = sr::fit_grid_force(solver, opt);
  const ParticleStore base = random_particles(3000, 32.0, 5);
  const VectorField ref = direct_short_range(base, kernel, 32.0);
  double tree_err = 0.0;
  for (std::size_t leaf : {32, 200, 1000}) {
    ParticleStore p = base;
    sr::ShortRangeOptions so;
    so.leaf_size = leaf;
    so.periodicity = sr::Periodicity::cubic(32.0);
    const VectorField got = sr::short_range_forces(p, kernel, so);
    VectorField aligned(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      aligned.x[p.id[i]] = got.x[i];
      aligned.y[p.id[i]] = got.y[i];
      aligned.z[p.id[i]] = got.z[i];
    }
    tree_err = std::max(tree_err, max_relative(aligned, ref));
  }
  add(r, "tree vs O(N^2) short-range sum", tree_err, 1e-5);
}

// ---- FORCE ----

void force_suite(SelftestReport& r, const fs::path& dir) {
  const pm::PmConfig cfg{64.0, 64};
  pm::PmSolver solver(cfg);
  const sr::ShortRangeKernel kernel = sr::fit_grid_force(solver);
  const double delta = cfg.delta();

  const auto pair = analysis::pair_force_test(solver, kernel, 2000, 0.2 * delta, 3.0 * delta, 404);
  add(r, "pair force RMS error, r in [0.2, 3] cells", pair.rms_relative_error, 0.005);

  double beyond = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double rr = delta * (3.0 + 5.0 * i / 1000.0);
    beyond = std::max(beyond, std::abs(sr::eval_f_sr(rr * rr, kernel)));
  }
  add(r, "short-range force beyond r_cut", beyond, 0.0);

  pm::PmConfig raw = cfg;
  raw.sigma = 0.0;
  raw.n_s = 0.0;
  pm::PmSolver unfiltered(raw);
  const auto a_raw = analysis::anisotropy_at(unfiltered, kernel, 3.0 * delta, 200, 505);
  const auto a_filt = analysis::anisotropy_at(solver, kernel, 3.0 * delta, 200, 505);
  add(r, "anisotropy reduction at 3 cells", a_raw.scatter() / a_filt.scatter(), 10.0, true);

  std::ofstream out(dir / "forces.csv");
  if (!out) {
    throw IoError("cannot write " + (dir / "forces.csv").string());
  }
  analysis::write_forces_csv(out, analysis::force_profile(pair, 28));
}

// ---- SCALING ----

void scaling_suite(SelftestReport& r, const fs::path& dir) {
  const pm::PmConfig cfg{64.0, 64};
  pm::PmSolver solver(cfg);
  sr::GridForceFitOptions opt;
  opt.n_samples = 2000;
  const sr::ShortRangeKernel kernel = sr::fit_grid_force(solver, opt);
  const ParticleStore base = random_particles(30000, 64.0, 9);
  auto workload = [&] {
    ParticleStore p = base;
    sr::ShortRangeOptions so;
    so.periodicity = sr::Periodicity::cubic(64.0);
    (void)sr::short_range_forces(p, kernel, so);
  };
  const int cores = omp_get_num_procs();
  const auto sweep = analysis::thread_sweep(workload, analysis::doubling_thread_counts(cores), 2);
  std::ofstream out(dir / "metrics.csv");
  if (!out) {
    throw IoError("cannot write " + (dir / "metrics.csv").string());
  }
  analysis::write_thread_sweep_csv(out, sweep);
  const auto& last = sweep.back();
  add(r, "force-phase speedup / ideal at " + std::to_string(last.threads) + " threads",
      last.speedup / last.threads, 0.5, true);
}

const char* suite_name(Suite s) {
  switch (s) {
    case Suite::unit: return "UNIT";
    case Suite::oracle: return "ORACLE";
    case Suite::force: return "FORCE";
    case Suite::scaling: return "SCALING";
  }
  return "?";
}

}  // namespace

Suite parse_suite(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char ch) { return std::toupper(ch); });
  for (Suite s : {Suite::unit, Suite::oracle, Suite::force, Suite::scaling}) {
    if (up == suite_name(s)) {
      return s;
    }
  }
  throw ConfigError("unknown selftest suite '" + std::string(name) + "' (UNIT, ORACLE, FORCE or SCALING)");
}

bool SelftestReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const SelftestRow& row) { return row.pass; });
}

std::vector<std::string> SelftestReport::failures() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (!row.pass) {
      out.push_back(row.property);
    }
  }
  return out;
}

SelftestReport selftest(Suite suite, const fs::path& output_dir) {
  SelftestReport report;
  report.suite = suite;
  if (suite == Suite::force || suite == Suite::scaling) {
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) {
      throw IoError("cannot create " + output_dir.string() + ": " + ec.message());
    }
  }
  switch (suite) {
    case Suite::unit: unit_suite(report); break;
    case Suite::oracle: oracle_suite(report); break;
    case Suite::force: force_suite(report, output_dir); break;
    case Suite::scaling: scaling_suite(report, output_dir); break;
  }
  return report;
}

void print_report(std::ostream& out, const SelftestReport& report) {
  char line[160];
  std::snprintf(line, sizeof line, "%-48s %12s %12s  %s\n", suite_name(report.suite), "measured", "tolerance",
                "result");
  out << line;
  for (const auto& row : report.rows) {
    std::snprintf(line, sizeof line, "%-48s %12.3e %2s%10.3e  %s\n", row.property.c_str(), row.measured,
                  row.at_least ? ">=" : "<=", row.tolerance, row.pass ? "pass" : "FAIL");
    out << line;
  }
  const auto failed = report.failures();
  if (failed.empty()) {
    out << "all " << report.rows.size() << " checks passed\n";
  } else {
    out << failed.size() << " of " << report.rows.size() << " checks failed:\n";
    for (const auto& f : failed) {
      out << "  " << f << '\n';
    }
  }
}

}  // namespace hacc::cli
