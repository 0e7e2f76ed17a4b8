#include <benchmark/benchmark.h>

#include <random>

#include "hacc/particles.hpp"
#include "hacc/shortrange/neighbor_list.hpp"

using namespace hacc;

namespace {

// One leaf of 128 targets against a shared list of state.range(0) sources,
// all inside a 3 Mpc cube so every pair is within the cutoff.
void BM_LeafKernel(benchmark::State& state) {
  const auto list_size = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.7);
  ParticleStore targets;
  for (std::uint64_t i = 0; i < 128; ++i) {
    targets.push_back({u(rng), u(rng), u(rng), 0, 0, 0, 1.0, i, Status::active});
  }
  sr::NeighborList list;
  for (std::size_t j = 0; j < list_size; ++j) {
    list.x.push_back(u(rng));
    list.y.push_back(u(rng));
    list.z.push_back(u(rng));
    list.m.push_back(1.0);
  }
  sr::ShortRangeKernel k;
  k.r_cut = 3.0;
  k.epsilon = 0.01;
  k.poly = {0.5, -0.1, 0.01, -1e-3, 1e-4, -1e-5};
  VectorField acc(targets.size());
  for (auto _ : state) {
    sr::pp_leaf_forces(targets, 0, targets.size(), list, k, {}, acc);
    benchmark::DoNotOptimize(acc.x.data());
  }
  const double pairs = static_cast<double>(targets.size() * list_size);
  state.counters["interactions"] = benchmark::Counter(pairs, benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_LeafKernel)->RangeMultiplier(2)->Range(64, 4096);

}  // namespace
