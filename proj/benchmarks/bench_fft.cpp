#include <benchmark/benchmark.h>

#include <random>

#include "hacc/fft/pencil_fft.hpp"

using namespace hacc;

namespace {

void BM_PencilForward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const fft::RankGrid grid{static_cast<int>(state.range(1)), static_cast<int>(state.range(2))};
  fft::PencilFft f({n, n, n}, grid);
  std::vector<double> real(static_cast<std::size_t>(n) * n * n);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (auto& v : real) {
    v = g(rng);
  }
  const auto in = f.scatter(real);
  for (auto _ : state) {
    auto out = f.forward(in);
    benchmark::DoNotOptimize(out.blocks.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(real.size()));
}
BENCHMARK(BM_PencilForward)
    ->Args({32, 1, 1})
    ->Args({32, 2, 2})
    ->Args({64, 1, 1})
    ->Args({64, 2, 2})
    ->Args({64, 4, 2})
    ->Unit(benchmark::kMillisecond);

}  // namespace
