#include "run.hpp"

#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hacc/comm.hpp"
#include "hacc/domain/overload.hpp"
#include "hacc/errors.hpp"
#include "hacc/ic/gaussian_field.hpp"
#include "hacc/ic/zeldovich.hpp"
#include "hacc/pm/poisson.hpp"
#include "hacc/shortrange/fit.hpp"
#include "hacc/stepper/stepper.hpp"
#include "manifest.hpp"
#include "snapshot.hpp"

namespace hacc::cli {

namespace fs = std::filesystem;

namespace {

template <class F>
auto in_phase(const char* phase, F&& f) -> decltype(f()) {
  const std::string tag = std::string("[") + phase + "] ";
  try {
    return f();
  } catch (const ConfigError& e) {
    throw ConfigError(tag + e.what());
  } catch (const OverloadEscapeError& e) {
    throw OverloadEscapeError(tag + e.what());
  } catch (const NumericError& e) {
    throw NumericError(tag + e.what());
  } catch (const IoError& e) {
    throw IoError(tag + e.what());
  } catch (const ContractError& e) {
    throw ContractError(tag + e.what());
  } catch (const DomainError& e) {
    throw DomainError(tag + e.what());
  }
}

std::string step_name(const char* prefix, int step, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04d.%s", prefix, step, ext);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out << text;
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

std::string kernel_csv(const sr::ShortRangeKernel& k) {
  std::ostringstream o;
  o.precision(17);
  o << "# epsilon,r_cut,c0,c1,c2,c3,c4,c5\n" << k.epsilon << ',' << k.r_cut;
  for (double c : k.poly) {
    o << ',' << c;
  }
  o << '\n';
  return o.str();
}

}  // namespace

ic::InputPowerSpectrum load_spectrum(const RunConfig& cfg) {
  if (cfg.spectrum == "power_law") {
    return ic::InputPowerSpectrum::power_law(cfg.pk_amplitude, cfg.pk_index);
  }
  std::ifstream in(cfg.pk_file);
  if (!in) {
    throw IoError("cannot open power spectrum table " + cfg.pk_file);
  }
  return ic::parse_power_spectrum(in);
}

RunResult run(const RunConfig& cfg, std::ostream& log) {
  in_phase("config", [&] { cfg.validate(); });
  if (cfg.threads > 0) {
    omp_set_num_threads(cfg.threads);
  }
  const fs::path out_dir(cfg.output_dir);
  in_phase("output", [&] {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
      throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
    }
  });

  const CosmologyParams cosmo = cfg.cosmology();
  pm::PmConfig pmc;
  pmc.box_length = cfg.box_length;
  pmc.n_grid = cfg.n_grid;
  pmc.sigma = cfg.sigma;
  pmc.n_s = cfg.n_s;
  pmc.r_cut = cfg.resolved_r_cut();
  pmc.fft_ranks = {cfg.fft_ranks[0], cfg.fft_ranks[1]};

  RunResult result;
  std::vector<std::string> outputs;

  pm::PmSolver solver = in_phase("setup", [&] { return pm::PmSolver(pmc); });

  result.kernel = in_phase("fit", [&] {
    sr::GridForceFitOptions opt;
    opt.n_samples = static_cast<std::size_t>(cfg.fit_samples);
    opt.n_sources = static_cast<std::size_t>(cfg.fit_sources);
    opt.epsilon = cfg.resolved_epsilon();
    return sr::fit_grid_force(solver, opt);
  });
  log << "fitted short-range kernel: r_cut = " << result.kernel.r_cut << " Mpc, eps = " << result.kernel.epsilon
      << " Mpc^2\n";
  in_phase("output", [&] { write_text(out_dir / "kernel.csv", kernel_csv(result.kernel)); });
  outputs.push_back("kernel.csv");

  const bool decomposed = cfg.rank_dims[0] * cfg.rank_dims[1] * cfg.rank_dims[2] > 1;
  ParticleStore particles = in_phase("ic", [&] {
    const ic::InputPowerSpectrum spectrum = load_spectrum(cfg);
    const ic::SpectralField delta = ic::gaussian_field(spectrum, cfg.n_particles, cfg.box_length, cfg.seed);
    ic::ZeldovichStats stats;
    const double limit = decomposed ? 0.5 * cfg.resolved_depth() : std::numeric_limits<double>::infinity();
    ParticleStore p = ic::zeldovich_displace(delta, cfg.a_in(), cosmo, limit, &stats);
    if (stats.max_displacement > 0.5 * stats.lattice_spacing) {
      log << "warning: largest Zel'dovich displacement " << stats.max_displacement
          << " Mpc exceeds half the lattice spacing; consider a higher z_in\n";
    }
    return p;
  });

  const int n_ranks = cfg.rank_dims[0] * cfg.rank_dims[1] * cfg.rank_dims[2];
  Communicator comm(n_ranks);
  domain::OverloadedSet set = in_phase("domain", [&] {
    const auto geometry = domain::decompose(cfg.box_length, cfg.rank_dims, comm.size());
    return domain::assign_and_overload(particles, geometry, cfg.resolved_depth());
  });
  particles = ParticleStore{};

  stepper::StepperConfig sc;
  sc.n_c = cfg.n_c;
  sc.a_in = cfg.a_in();
  sc.a_final = cfg.a_final;
  sc.n_steps = cfg.n_steps;
  stepper::ForceSetup forces;
  forces.cosmo = cosmo;
  forces.pm = &solver;
  forces.kernel = result.kernel;
  forces.mode = cfg.mode;
  forces.leaf_size = static_cast<std::size_t>(cfg.leaf_size);
  stepper::Stepper stepper = in_phase("step", [&] { return stepper::Stepper(sc, forces, comm); });

  auto write_outputs = [&](int step) {
    const double a = sc.a_at(step);
    const ParticleStore active = domain::collect_active(set);
    const std::string snap = step_name("snap", step, "bin");
    write_snapshot(out_dir / snap, make_snapshot(active, cfg.box_length, a, cosmo, cfg.seed,
                                                 static_cast<std::size_t>(cfg.snapshot_stride)));
    const auto pk = analysis::power_spectrum(active, cfg.box_length, cfg.n_grid, cfg.pk_bins, a);
    std::ostringstream csv;
    analysis::write_pk_csv(csv, pk);
    const std::string pk_name = step_name("pk", step, "csv");
    write_text(out_dir / pk_name, csv.str());
    outputs.push_back(snap);
    outputs.push_back(pk_name);
    result.snapshot_steps.push_back(step);
    result.spectra.push_back(pk);
    log << "snapshot " << step << " at a = " << a << '\n';
  };

  const int threads = omp_get_max_threads();
  for (int s = 0; s < cfg.n_steps; ++s) {
    if (s % cfg.snapshot_every == 0) {
      in_phase("output", [&] { write_outputs(s); });
    }
    in_phase("step", [&] { stepper.step(set, s); });
    result.metrics.push_back(
        analysis::record_metrics(s, stepper.last_step_times(), set.active_total(), threads));
  }
  in_phase("output", [&] {
    write_outputs(cfg.n_steps);
    std::ostringstream metrics;
    analysis::write_metrics_csv(metrics, result.metrics);
    write_text(out_dir / "metrics.csv", metrics.str());
    // metrics.csv holds wall times and is left out of the hashed outputs.
    const auto entries = hash_outputs(out_dir, outputs);
    result.manifest = manifest_json(cfg.echo(false), entries);
    write_text(out_dir / "manifest.json", result.manifest);
    std::string listing;
    for (const auto& e : entries) {
      listing += e.name + ' ' + e.hash + '\n';
    }
    result.outputs_hash = git_blob_hash(listing);
  });
  log << "run complete: outputs hash " << result.outputs_hash << '\n';
  return result;
}

}  // namespace hacc::cli
