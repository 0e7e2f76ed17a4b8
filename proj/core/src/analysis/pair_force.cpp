#include "hacc/analysis/pair_force.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hacc/errors.hpp"
#include "hacc/shortrange/fit.hpp"

namespace hacc::analysis {

namespace {

PairForceSample combine(const sr::GridForceSample& g, const sr::ShortRangeKernel& kernel) {
  PairForceSample out;
  out.r = g.r;
  const double s = g.r * g.r;
  out.short_range = g.r * sr::eval_f_sr(s, kernel);
  out.radial = g.radial + out.short_range;
  out.tangential = g.tangential;
  const double se = s + kernel.epsilon;
  out.newton = g.r / (se * std::sqrt(se));
  return out;
}

}  // namespace

double PairForceSample::relative_error() const {
  const double dr = radial - newton;
  return std::sqrt(dr * dr + tangential * tangential) / newton;
}

PairForceResult pair_force_test(pm::PmSolver& solver, const sr::ShortRangeKernel& kernel, std::size_t n_samples,
                                double r_min, double r_max, std::uint64_t seed, std::size_t n_sources) {
  if (!(r_min > 0.0 && r_max >= r_min)) {
    throw ContractError("pair_force_test: need 0 < r_min <= r_max");
  }
  const auto grid = sr::sample_grid_force(solver, n_samples, n_sources, r_min, r_max, seed);
  PairForceResult out;
  out.samples.reserve(grid.size());
  double sum2 = 0.0;
  for (const auto& g : grid) {
    const PairForceSample smp = combine(g, kernel);
    const double e = smp.relative_error();
    sum2 += e * e;
    out.max_relative_error = std::max(out.max_relative_error, e);
    out.samples.push_back(smp);
  }
  out.rms_relative_error = std::sqrt(sum2 / static_cast<double>(out.samples.size()));
  return out;
}

AnisotropyResult anisotropy_at(pm::PmSolver& solver, const sr::ShortRangeKernel& kernel, double r,
                               std::size_t orientations, std::uint64_t seed, std::size_t n_sources) {
  const PairForceResult res = pair_force_test(solver, kernel, orientations, r, r, seed, n_sources);
  AnisotropyResult out;
  out.r = r;
  out.orientations = res.samples.size();
  double sum = 0.0;
  double sum2 = 0.0;
  double tan2 = 0.0;
  for (const auto& s : res.samples) {
    sum += s.radial;
    sum2 += s.radial * s.radial;
    tan2 += s.tangential * s.tangential;
  }
  const auto n = static_cast<double>(res.samples.size());
  out.mean_radial = sum / n;
  out.radial_std = std::sqrt(std::max(0.0, sum2 / n - out.mean_radial * out.mean_radial));
  out.tangential_rms = std::sqrt(tan2 / n);
  return out;
}

std::vector<ForceProfileBin> force_profile(const PairForceResult& result, int n_bins) {
  if (n_bins < 1 || result.samples.empty()) {
    return {};
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : result.samples) {
    lo = std::min(lo, s.r);
    hi = std::max(hi, s.r);
  }
  const double width = hi > lo ? (hi - lo) / n_bins : 1.0;
  std::vector<ForceProfileBin> bins(static_cast<std::size_t>(n_bins));
  std::vector<double> tan2(static_cast<std::size_t>(n_bins), 0.0);
  for (const auto& s : result.samples) {
    const auto b = static_cast<std::size_t>(std::clamp(static_cast<int>((s.r - lo) / width), 0, n_bins - 1));
    bins[b].r += s.r;
    bins[b].radial += s.radial;
    bins[b].newton += s.newton;
    tan2[b] += s.tangential * s.tangential;
    ++bins[b].count;
  }
  std::vector<ForceProfileBin> out;
  for (std::size_t b = 0; b < bins.size(); ++b) {
    if (bins[b].count == 0) {
      continue;
    }
    const auto c = static_cast<double>(bins[b].count);
    out.push_back({bins[b].r / c, bins[b].radial / c, std::sqrt(tan2[b] / c), bins[b].newton / c, bins[b].count});
  }
  return out;
}

void write_forces_csv(std::ostream& out, const std::vector<ForceProfileBin>& profile) {
  out << "# r,F_radial,F_tangential_rms,F_newton,count\n";
  out.precision(10);
  for (const auto& b : profile) {
    out << b.r << ',' << b.radial << ',' << b.tangential_rms << ',' << b.newton << ',' << b.count << '\n';
  }
}

}  // namespace hacc::analysis
