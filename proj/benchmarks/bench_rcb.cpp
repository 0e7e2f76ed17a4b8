#include <benchmark/benchmark.h>

#include <random>

#include "hacc/shortrange/rcb_tree.hpp"

using namespace hacc;

namespace {

ParticleStore uniform(std::size_t n, double box) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, box);
  ParticleStore p;
  for (std::uint64_t i = 0; i < n; ++i) {
    p.push_back({u(rng), u(rng), u(rng), 0, 0, 0, 1.0, i, Status::active});
  }
  return p;
}

void BM_RcbBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto leaf = static_cast<std::size_t>(state.range(1));
  const ParticleStore base = uniform(n, 64.0);
  for (auto _ : state) {
    state.PauseTiming();
    ParticleStore p = base;
    state.ResumeTiming();
    auto tree = sr::rcb_build(p, 0, p.size(), leaf);
    benchmark::DoNotOptimize(tree.nodes.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_RcbBuild)->Args({32768, 32})->Args({32768, 200})->Args({262144, 200})->Unit(benchmark::kMillisecond);

}  // namespace
