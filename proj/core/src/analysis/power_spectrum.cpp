#include "hacc/analysis/power_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "hacc/errors.hpp"
#include "hacc/fft/pencil_fft.hpp"
#include "hacc/pm/cic.hpp"

namespace hacc::analysis {

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// Bins |delta_k|^2 * weight(i,j,k) over the non-zero modes of an n^3 lattice.
PowerSpectrumResult bin_modes(int n, double box_length, int n_bins,
                              const std::function<double(int, int, int)>& power_of_mode) {
  if (n_bins < 1) {
    throw ContractError("power_spectrum: need at least one bin");
  }
  const double k_f = 2.0 * std::numbers::pi / box_length;
  const double k_max = std::sqrt(3.0) * std::numbers::pi * n / box_length;
  const double log_lo = std::log(k_f);
  const double log_span = std::log(k_max) - log_lo;

  PowerSpectrumResult out;
  out.box_length = box_length;
  out.n_grid = n;
  out.bins.resize(static_cast<std::size_t>(n_bins));
  for (int b = 0; b < n_bins; ++b) {
    auto& bin = out.bins[static_cast<std::size_t>(b)];
    bin.k_lo = std::exp(log_lo + log_span * b / n_bins);
    bin.k_hi = std::exp(log_lo + log_span * (b + 1) / n_bins);
  }
  out.bins.front().k_lo = k_f;
  out.bins.back().k_hi = k_max;

  std::vector<double> ksum(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<double> psum(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<std::size_t> count(static_cast<std::size_t>(n_bins), 0);
  for (int i = 0; i < n; ++i) {
    const double kx = pm::wavenumber(i, n, box_length);
    for (int j = 0; j < n; ++j) {
      const double ky = pm::wavenumber(j, n, box_length);
      for (int k = 0; k < n; ++k) {
        if (i == 0 && j == 0 && k == 0) {
          continue;
        }
        const double kz = pm::wavenumber(k, n, box_length);
        const double kmag = std::sqrt(kx * kx + ky * ky + kz * kz);
        int b = static_cast<int>(std::floor((std::log(kmag) - log_lo) / log_span * n_bins));
        b = std::clamp(b, 0, n_bins - 1);
        ksum[static_cast<std::size_t>(b)] += kmag;
        psum[static_cast<std::size_t>(b)] += power_of_mode(i, j, k);
        ++count[static_cast<std::size_t>(b)];
      }
    }
  }
  for (std::size_t b = 0; b < out.bins.size(); ++b) {
    auto& bin = out.bins[b];
    bin.modes = count[b];
    if (count[b] > 0) {
      bin.k = ksum[b] / static_cast<double>(count[b]);
      bin.power = psum[b] / static_cast<double>(count[b]);
    } else {
      bin.k = std::sqrt(bin.k_lo * bin.k_hi);
    }
  }
  return out;
}

}  // namespace

PowerSpectrumResult power_spectrum(const pm::Grid3& delta, double box_length, int n_bins, bool deconvolve_cic,
                                   double shot_noise, double a) {
  const int n = delta.n();
  fft::PencilFft fft({n, n, n}, {1, 1});
  const std::vector<fft::Complex> modes = fft.gather(fft.forward(fft.scatter(delta.values())));
  const double volume = box_length * box_length * box_length;
  const double norm = 1.0 / (static_cast<double>(n) * n * n);
  const double delta_cell = box_length / n;

  std::vector<double> window(static_cast<std::size_t>(n), 1.0);
  if (deconvolve_cic) {
    for (int m = 0; m < n; ++m) {
      const double w = sinc(0.5 * pm::wavenumber(m, n, box_length) * delta_cell);
      window[static_cast<std::size_t>(m)] = w * w;
    }
  }
  auto power = [&](int i, int j, int k) {
    const std::size_t idx = (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(k);
    const double w = window[static_cast<std::size_t>(i)] * window[static_cast<std::size_t>(j)] *
                     window[static_cast<std::size_t>(k)];
    return volume * std::norm(modes[idx] * norm) / (w * w);
  };
  PowerSpectrumResult out = bin_modes(n, box_length, n_bins, power);
  out.shot_noise = shot_noise;
  out.a = a;
  return out;
}

PowerSpectrumResult power_spectrum(const ParticleStore& particles, double box_length, int n_grid, int n_bins,
                                   double a) {
  const std::size_t active = particles.count(Status::active);
  if (active == 0) {
    throw ContractError("power_spectrum: no ACTIVE particles");
  }
  pm::PmConfig cfg;
  cfg.box_length = box_length;
  cfg.n_grid = n_grid;
  cfg.r_cut = cfg.delta();
  const pm::DensityGrid density = pm::cic_deposit(particles, cfg);
  const double volume = box_length * box_length * box_length;
  return power_spectrum(density.delta, box_length, n_bins, true, volume / static_cast<double>(active), a);
}

PowerSpectrumResult power_spectrum(const ic::SpectralField& field, int n_bins) {
  const double volume = field.box_length * field.box_length * field.box_length;
  auto power = [&](int i, int j, int k) { return volume * std::norm(field(i, j, k)); };
  return bin_modes(field.n, field.box_length, n_bins, power);
}

void write_pk_csv(std::ostream& out, const PowerSpectrumResult& r) {
  out << "# k_lo,k_hi,k,P,count,shot_noise  (a=" << r.a << ", L=" << r.box_length << ", n_grid=" << r.n_grid
      << ")\n";
  out.precision(10);
  for (const auto& b : r.bins) {
    out << b.k_lo << ',' << b.k_hi << ',' << b.k << ',' << b.power << ',' << b.modes << ',' << r.shot_noise << '\n';
  }
}

}  // namespace hacc::analysis
