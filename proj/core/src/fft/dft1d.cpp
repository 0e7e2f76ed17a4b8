#include "hacc/fft/dft1d.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "hacc/errors.hpp"

namespace hacc::fft {

namespace {

// fftw planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) {
      fftw_destroy_plan(plan);
    }
  }

  fftw_plan get(int n, Direction dir) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, static_cast<int>(dir));
    if (auto it = plans_.find(key); it != plans_.end()) {
      return it->second;
    }
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) {
      throw NumericError("fftw: failed to create a plan");
    }
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void dft_naive(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, Direction dir) {
  const std::size_t n = in.size();
  if (out.size() != n) {
    throw ContractError("dft_naive: input and output lengths differ");
  }
  const double sign = static_cast<double>(static_cast<int>(dir));
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc{};
    for (std::size_t j = 0; j < n; ++j) {
      // Reduce j*k mod n first so the twiddle argument stays small.
      const auto jk = (j * k) % n;
      const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(jk) / static_cast<double>(n);
      acc += in[j] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[k] = acc;
  }
}

void transform_lines(std::span<std::complex<double>> data, int n, Direction dir, Engine engine) {
  if (n <= 0 || data.size() % static_cast<std::size_t>(n) != 0) {
    throw ContractError("transform_lines: data length is not a multiple of the line length");
  }
  const std::size_t lines = data.size() / static_cast<std::size_t>(n);
  if (engine == Engine::naive) {
    std::vector<std::complex<double>> tmp(static_cast<std::size_t>(n));
    for (std::size_t l = 0; l < lines; ++l) {
      auto line = data.subspan(l * static_cast<std::size_t>(n), static_cast<std::size_t>(n));
      dft_naive(line, tmp, dir);
      std::copy(tmp.begin(), tmp.end(), line.begin());
    }
    return;
  }
  fftw_plan plan = plan_cache().get(n, dir);
  for (std::size_t l = 0; l < lines; ++l) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data() + l * static_cast<std::size_t>(n));
    fftw_execute_dft(plan, p, p);
  }
}

}  // namespace hacc::fft
