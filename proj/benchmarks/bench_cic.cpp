#include <benchmark/benchmark.h>

#include <random>

#include "hacc/pm/cic.hpp"

using namespace hacc;

namespace {

ParticleStore uniform(std::size_t n, double box) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, box);
  ParticleStore p;
  for (std::uint64_t i = 0; i < n; ++i) {
    p.push_back({u(rng), u(rng), u(rng), 0, 0, 0, 1.0, i, Status::active});
  }
  return p;
}

void BM_CicDeposit(benchmark::State& state) {
  const pm::PmConfig cfg{64.0, static_cast<int>(state.range(0))};
  const ParticleStore p = uniform(static_cast<std::size_t>(state.range(1)), cfg.box_length);
  for (auto _ : state) {
    auto g = pm::deposit_mass(p, cfg);
    benchmark::DoNotOptimize(g.values().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_CicDeposit)->Args({64, 32768})->Args({128, 262144})->Unit(benchmark::kMillisecond);

void BM_CicInterpolate(benchmark::State& state) {
  const pm::PmConfig cfg{64.0, static_cast<int>(state.range(0))};
  const ParticleStore p = uniform(static_cast<std::size_t>(state.range(1)), cfg.box_length);
  pm::ForceGrids f;
  for (auto& c : f.component) {
    c = pm::Grid3(cfg.n_grid);
    auto v = c.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = static_cast<double>(i % 17) * 0.1;
    }
  }
  for (auto _ : state) {
    auto acc = pm::cic_interpolate(f, p.x, p.y, p.z, cfg);
    benchmark::DoNotOptimize(acc.x.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_CicInterpolate)->Args({64, 32768})->Args({128, 262144})->Unit(benchmark::kMillisecond);

}  // namespace
