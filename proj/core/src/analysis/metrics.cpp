#include "hacc/analysis/metrics.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>

#include "hacc/errors.hpp"

namespace hacc::analysis {

MetricsRecord record_metrics(int step, const stepper::PhaseTimes& t, std::size_t particles, int threads) {
  MetricsRecord r;
  r.step = step;
  r.particles = particles;
  r.threads = threads;
  const double total = t.total();
  const std::size_t substeps = std::max<std::size_t>(t.substeps, 1);
  r.wall_per_substep = total / static_cast<double>(substeps);
  r.time_per_substep_particle = particles > 0 ? r.wall_per_substep / static_cast<double>(particles) : 0.0;
  if (total > 0.0) {
    r.frac_kernel = t.kernel / total;
    r.frac_walk = t.walk / total;
    r.frac_fft = t.fft / total;
    r.frac_other = t.other / total;
  }
  return r;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records) {
  out << "# step,wall_per_substep,particles,time_per_substep_particle,threads,frac_kernel,frac_walk,frac_fft,"
         "frac_other\n";
  out.precision(8);
  for (const auto& r : records) {
    out << r.step << ',' << r.wall_per_substep << ',' << r.particles << ',' << r.time_per_substep_particle << ','
        << r.threads << ',' << r.frac_kernel << ',' << r.frac_walk << ',' << r.frac_fft << ',' << r.frac_other
        << '\n';
  }
}

std::vector<ThreadSweepPoint> thread_sweep(const std::function<void()>& workload, const std::vector<int>& threads,
                                           int repeats) {
  if (threads.empty() || repeats < 1) {
    throw ContractError("thread_sweep: need at least one thread count and one repeat");
  }
  const int saved = omp_get_max_threads();
  std::vector<ThreadSweepPoint> out;
  for (int t : threads) {
    if (t < 1) {
      omp_set_num_threads(saved);
      throw ContractError("thread_sweep: thread counts must be positive");
    }
    omp_set_num_threads(t);
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < repeats; ++r) {
      double elapsed = 0.0;
      {
        ScopedTimer timer(elapsed);
        workload();
      }
      best = std::min(best, elapsed);
    }
    out.push_back({t, best, 1.0});
  }
  omp_set_num_threads(saved);
  for (auto& p : out) {
    p.speedup = out.front().seconds / p.seconds;
  }
  return out;
}

std::vector<int> doubling_thread_counts(int max_threads) {
  std::vector<int> out;
  for (int t = 1; t < max_threads; t *= 2) {
    out.push_back(t);
  }
  out.push_back(std::max(1, max_threads));
  return out;
}

void write_thread_sweep_csv(std::ostream& out, const std::vector<ThreadSweepPoint>& points) {
  out << "# threads,seconds,speedup\n";
  out.precision(8);
  for (const auto& p : points) {
    out << p.threads << ',' << p.seconds << ',' << p.speedup << '\n';
  }
}

}  // namespace hacc::analysis
