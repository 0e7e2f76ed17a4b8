#pragma once

#include <cstddef>
#include <optional>

#include "hacc/comm.hpp"
#include "hacc/cosmology.hpp"
#include "hacc/domain/overload.hpp"
#include "hacc/particles.hpp"
#include "hacc/pm/poisson.hpp"
#include "hacc/shortrange/forces.hpp"
#include "hacc/shortrange/kernel.hpp"

namespace hacc::stepper {

// Long-range steps uniform in scale factor, each split into n_c short-range
// sub-cycles.
struct StepperConfig {
  int n_c = 5;
  double a_in = 1.0 / 26.0;
  double a_final = 1.0;
  int n_steps = 30;

  // Throws ConfigError unless 1 <= n_c <= 32, 0 < a_in < a_final <= 1, n_steps >= 1.
  void validate() const;
  [[nodiscard]] double a_at(int step) const;
};

// Forces acting on the particles. A null pm disables the long-range part and
// a zero kernel cutoff disables the short-range part.
struct ForceSetup {
  CosmologyParams cosmo;
  pm::PmSolver* pm = nullptr;
  sr::ShortRangeKernel kernel;
  sr::ShortRangeMode mode = sr::ShortRangeMode::tree;
  std::size_t leaf_size = 200;
};

// Accumulated wall time per phase, seconds.
struct PhaseTimes {
  double kernel = 0.0;  // short-range pair sums
  double walk = 0.0;    // tree build and neighbour-list gathering
  double fft = 0.0;     // PM deposit, solve and interpolation
  double other = 0.0;   // kicks, streams, refresh
  std::size_t substeps = 0;

  [[nodiscard]] double total() const { return kernel + walk + fft + other; }
  PhaseTimes& operator+=(const PhaseTimes& o);
};

// Stream: x += p * drift_factor(a0, a1).
void stream(ParticleStore& particles, double a0, double a1, const CosmologyParams& cosmo);

// Long-range kick with an acceleration evaluated at scale factor a_force:
// p += acc * a_force * comoving_kick_factor(a0, a1). Positions are untouched.
void long_range_kick(ParticleStore& particles, const VectorField& acc, double a_force, double a0, double a1,
                     const CosmologyParams& cosmo);

// Short-range accelerations G * sum_j m_j (x_j - x_i) f_SR(s) for the store.
VectorField short_range_acceleration(ParticleStore& particles, const ForceSetup& forces,
                                     const sr::Periodicity& periodicity, sr::ShortRangeStats* stats = nullptr);

// Symmetric stream-kick-stream map over [a0, a1]: S(half) K(full) S(half)
// with the midpoint taken in a. The long-range force is not touched.
void sub_cycle(ParticleStore& particles, const ForceSetup& forces, const sr::Periodicity& periodicity, double a0,
               double a1, PhaseTimes* times = nullptr);

// Long-range accelerations for every stored particle of every rank, from the
// ACTIVE particles of all ranks, at scale factor a.
class LongRangeForce {
 public:
  explicit LongRangeForce(pm::PmSolver& solver) : solver_(&solver) {}

  void compute(const domain::OverloadedSet& set, double a, double G);
  [[nodiscard]] bool valid_at(double a) const { return grids_.has_value() && a_ == a; }
  void invalidate() { grids_.reset(); }
  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] VectorField interpolate(const ParticleStore& particles) const;

 private:
  pm::PmSolver* solver_;
  std::optional<pm::ForceGrids> grids_;
  double a_ = 0.0;
};

// Full step: half long-range kick, n_c sub-cycles, half kick,
// then an overload refresh. The PM field at the end of a step is kept and
// reused for the opening kick of the next one, so each step costs one PM solve.
class Stepper {
 public:
  Stepper(StepperConfig config, ForceSetup forces, Communicator& comm);

  [[nodiscard]] const StepperConfig& config() const { return config_; }
  [[nodiscard]] const ForceSetup& forces() const { return forces_; }

  void full_step(domain::OverloadedSet& set, double a0, double a1);
  // Runs step `step` of the configured schedule.
  void step(domain::OverloadedSet& set, int step);

  [[nodiscard]] const PhaseTimes& last_step_times() const { return last_; }
  [[nodiscard]] std::size_t pm_solves() const { return pm_solves_; }

 private:
  void kick(domain::OverloadedSet& set, double a0, double a1);
  void ensure_long_range(const domain::OverloadedSet& set, double a);

  StepperConfig config_;
  ForceSetup forces_;
  Communicator* comm_;
  std::optional<LongRangeForce> long_range_;
  PhaseTimes last_;
  std::size_t pm_solves_ = 0;
};

}  // namespace hacc::stepper
