#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <ostream>
#include <vector>

#include "hacc/stepper/stepper.hpp"

namespace hacc::analysis {

struct MetricsRecord {
  int step = 0;
  double wall_per_substep = 0.0;  // seconds
  std::size_t particles = 0;
  double time_per_substep_particle = 0.0;  // seconds
  int threads = 1;
  double frac_kernel = 0.0;
  double frac_walk = 0.0;
  double frac_fft = 0.0;
  double frac_other = 0.0;
};

// Fractions are of the summed phase time and add up to 1.
MetricsRecord record_metrics(int step, const stepper::PhaseTimes& times, std::size_t particles, int threads);

// '#' header then one row per record, fields in declaration order.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records);

// Adds the lifetime of the timer, in seconds, to `sink`.
class ScopedTimer {
 public:
  explicit ScopedTimer(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;
  ~ScopedTimer() { sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

struct ThreadSweepPoint {
  int threads = 1;
  double seconds = 0.0;  // best of the repeats
  double speedup = 1.0;  // relative to the first point
};

// Runs `workload` at each thread count (best of `repeats`) and restores the
// previous OpenMP thread count afterwards.
std::vector<ThreadSweepPoint> thread_sweep(const std::function<void()>& workload, const std::vector<int>& threads,
                                           int repeats = 3);

// 1, 2, 4, ... up to and including max_threads.
std::vector<int> doubling_thread_counts(int max_threads);

void write_thread_sweep_csv(std::ostream& out, const std::vector<ThreadSweepPoint>& points);

}  // namespace hacc::analysis
