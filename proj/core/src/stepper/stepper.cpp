#include "hacc/stepper/stepper.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "hacc/errors.hpp"
#include "hacc/pm/cic.hpp"

namespace hacc::stepper {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

}  // namespace

void StepperConfig::validate() const {
  if (n_c < 1 || n_c > 32) {
    throw ConfigError("n_c must lie in [1, 32], got " + std::to_string(n_c));
  }
  if (!(a_in > 0.0 && a_in < a_final && a_final <= 1.0)) {
    throw ConfigError("scale factors must satisfy 0 < a_in < a_final <= 1");
  }
  if (n_steps < 1) {
    throw ConfigError("n_steps must be at least 1");
  }
}

double StepperConfig::a_at(int step) const {
  if (step >= n_steps) {
    return a_final;
  }
  return a_in + (a_final - a_in) * static_cast<double>(step) / static_cast<double>(n_steps);
}

PhaseTimes& PhaseTimes::operator+=(const PhaseTimes& o) {
  kernel += o.kernel;
  walk += o.walk;
  fft += o.fft;
  other += o.other;
  substeps += o.substeps;
  return *this;
}

void stream(ParticleStore& p, double a0, double a1, const CosmologyParams& cosmo) {
  if (a1 == a0) {
    return;
  }
  const double w = drift_factor(a0, a1, cosmo);
  const std::size_t n = p.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    p.x[i] += p.px[i] * w;
    p.y[i] += p.py[i] * w;
    p.z[i] += p.pz[i] * w;
  }
}

void long_range_kick(ParticleStore& p, const VectorField& acc, double a_force, double a0, double a1,
                     const CosmologyParams& cosmo) {
  if (acc.size() != p.size()) {
    throw ContractError("long_range_kick: acceleration size does not match the particle count");
  }
  if (a1 == a0) {
    return;
  }
  const double w = a_force * comoving_kick_factor(a0, a1, cosmo);
  const std::size_t n = p.size();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    p.px[i] += acc.x[i] * w;
    p.py[i] += acc.y[i] * w;
    p.pz[i] += acc.z[i] * w;
  }
}

VectorField short_range_acceleration(ParticleStore& p, const ForceSetup& forces, const sr::Periodicity& periodicity,
                                     sr::ShortRangeStats* stats) {
  if (!(forces.kernel.r_cut > 0.0) || p.empty()) {
    return VectorField(p.size());
  }
  sr::ShortRangeOptions opt;
  opt.mode = forces.mode;
  opt.leaf_size = forces.leaf_size;
  opt.periodicity = periodicity;
  opt.active_only = true;
  VectorField acc = sr::short_range_forces(p, forces.kernel, opt, stats);
  const double G = forces.cosmo.G();
  for (std::size_t i = 0; i < acc.size(); ++i) {
    acc.x[i] *= G;
    acc.y[i] *= G;
    acc.z[i] *= G;
  }
  return acc;
}

void sub_cycle(ParticleStore& p, const ForceSetup& forces, const sr::Periodicity& periodicity, double a0, double a1,
               PhaseTimes* times) {
  const double am = 0.5 * (a0 + a1);
  auto t0 = Clock::now();
  stream(p, a0, am, forces.cosmo);
  double other = since(t0);

  sr::ShortRangeStats stats;
  const VectorField acc = short_range_acceleration(p, forces, periodicity, &stats);

  t0 = Clock::now();
  if (a1 != a0 && forces.kernel.r_cut > 0.0) {
    const double w = comoving_kick_factor(a0, a1, forces.cosmo);
    const std::size_t n = p.size();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      p.px[i] += acc.x[i] * w;
      p.py[i] += acc.y[i] * w;
      p.pz[i] += acc.z[i] * w;
    }
  }
  stream(p, am, a1, forces.cosmo);
  other += since(t0);

  if (times != nullptr) {
    times->kernel += stats.kernel_seconds;
    times->walk += stats.build_seconds + stats.walk_seconds;
    times->other += other;
  }
}

void LongRangeForce::compute(const domain::OverloadedSet& set, double a, double G) {
  const pm::PmConfig& cfg = solver_->config();
  pm::Grid3 mass(cfg.n_grid);
  for (const ParticleStore& store : set.ranks) {
    const pm::Grid3 part = pm::deposit_mass(store, cfg);
    auto dst = mass.values();
    auto src = part.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
      dst[i] += src[i];
    }
  }
  const pm::DensityGrid density = pm::density_contrast(mass, cfg);
  grids_ = solver_->solve_forces(density, Background{a}, G);
  a_ = a;
}

VectorField LongRangeForce::interpolate(const ParticleStore& p) const {
  if (!grids_) {
    throw ContractError("LongRangeForce: interpolate called before compute");
  }
  return pm::cic_interpolate(*grids_, p.x, p.y, p.z, solver_->config());
}

Stepper::Stepper(StepperConfig config, ForceSetup forces, Communicator& comm)
    : config_(config), forces_(std::move(forces)), comm_(&comm) {
  config_.validate();
  forces_.cosmo.validate();
  if (forces_.pm != nullptr) {
    long_range_.emplace(*forces_.pm);
  }
}

void Stepper::ensure_long_range(const domain::OverloadedSet& set, double a) {
  if (!long_range_ || long_range_->valid_at(a)) {
    return;
  }
  long_range_->compute(set, a, forces_.cosmo.G());
  ++pm_solves_;
}

void Stepper::kick(domain::OverloadedSet& set, double a0, double a1) {
  if (!long_range_) {
    return;
  }
  for (ParticleStore& store : set.ranks) {
    const VectorField acc = long_range_->interpolate(store);
    long_range_kick(store, acc, long_range_->a(), a0, a1, forces_.cosmo);
  }
}

void Stepper::full_step(domain::OverloadedSet& set, double a0, double a1) {
  if (!(a1 > a0)) {
    throw DomainError("full_step: a1 must exceed a0");
  }
  PhaseTimes t;
  const double am = 0.5 * (a0 + a1);

  auto t0 = Clock::now();
  ensure_long_range(set, a0);
  kick(set, a0, am);
  t.fft += since(t0);

  const sr::Periodicity periodicity = set.periodicity();
  const double tau = (a1 - a0) / config_.n_c;
  for (int c = 0; c < config_.n_c; ++c) {
    const double b0 = a0 + tau * c;
    const double b1 = c + 1 == config_.n_c ? a1 : a0 + tau * (c + 1);
    for (ParticleStore& store : set.ranks) {
      sub_cycle(store, forces_, periodicity, b0, b1, &t);
    }
    ++t.substeps;
  }

  t0 = Clock::now();
  ensure_long_range(set, a1);
  kick(set, am, a1);
  t.fft += since(t0);

  t0 = Clock::now();
  domain::refresh_overload(set, *comm_);
  t.other += since(t0);
  last_ = t;
}

void Stepper::step(domain::OverloadedSet& set, int step) {
  if (step < 0 || step >= config_.n_steps) {
    throw ContractError("Stepper::step: step index out of range");
  }
  full_step(set, config_.a_at(step), config_.a_at(step + 1));
}

}  // namespace hacc::stepper
