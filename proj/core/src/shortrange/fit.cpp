#include "hacc/shortrange/fit.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

#include "hacc/errors.hpp"
#include "hacc/pm/cic.hpp"

namespace hacc::sr {

std::vector<GridForceSample> sample_grid_force(pm::PmSolver& solver, std::size_t n_samples, std::size_t n_sources,
                                               double r_min, double r_max, std::uint64_t seed) {
  if (n_sources == 0 || n_samples == 0) {
    throw ContractError("sample_grid_force: need at least one source and one sample");
  }
  const pm::PmConfig& cfg = solver.config();
  const double L = cfg.box_length;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<GridForceSample> out;
  out.reserve(n_samples);
  for (std::size_t s = 0; s < n_sources; ++s) {
    const std::array<double, 3> src{L * unit(rng), L * unit(rng), L * unit(rng)};
    const pm::ForceGrids field = solver.point_mass_field(src, 1.0, 1.0);
    const std::size_t lo = n_samples * s / n_sources;
    const std::size_t hi = n_samples * (s + 1) / n_sources;
    const std::size_t count = hi - lo;

    std::vector<double> tx(count), ty(count), tz(count), rr(count);
    std::vector<std::array<double, 3>> dir(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double cos_t = 2.0 * unit(rng) - 1.0;
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
      const std::array<double, 3> n{sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t};
      const double r = r_min + (r_max - r_min) * unit(rng);
      rr[i] = r;
      dir[i] = n;
      // Test particle sits at src + r n, wrapped into the box.
      tx[i] = std::fmod(src[0] + r * n[0] + L, L);
      ty[i] = std::fmod(src[1] + r * n[1] + L, L);
      tz[i] = std::fmod(src[2] + r * n[2] + L, L);
    }
    const VectorField f = pm::cic_interpolate(field, tx, ty, tz, cfg);
    for (std::size_t i = 0; i < count; ++i) {
      // Attraction points from the test particle back to the source: -n.
      const double radial = -(f.x[i] * dir[i][0] + f.y[i] * dir[i][1] + f.z[i] * dir[i][2]);
      const double tx_ = f.x[i] + radial * dir[i][0];
      const double ty_ = f.y[i] + radial * dir[i][1];
      const double tz_ = f.z[i] + radial * dir[i][2];
      out.push_back(GridForceSample{rr[i], radial, std::sqrt(tx_ * tx_ + ty_ * ty_ + tz_ * tz_)});
    }
  }
  return out;
}

ShortRangeKernel fit_grid_force(const std::vector<GridForceSample>& samples, double r_cut, double epsilon) {
  if (samples.size() < 6) {
    throw NumericError("fit_grid_force: too few samples for a degree-5 fit");
  }
  const double rc2 = r_cut * r_cut;
  const auto rows = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(rows, 6);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& smp = samples[static_cast<std::size_t>(i)];
    const double s = smp.r * smp.r;
    const double t = s / rc2;
    const double se = s + epsilon;
    const double w = se * std::sqrt(se);
    double tk = 1.0;
    for (int k = 0; k < 6; ++k) {
      design(i, k) = w * tk;
      tk *= t;
    }
    rhs(i) = w * smp.radial / smp.r;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const auto& sv = svd.singularValues();
  const double cond = sv(0) / sv(sv.size() - 1);
  if (!std::isfinite(cond) || cond > 1e12) {
    throw NumericError("fit_grid_force: ill-conditioned fit (condition number " + std::to_string(cond) + ")");
  }
  const Eigen::VectorXd coeff = design.colPivHouseholderQr().solve(rhs);

  ShortRangeKernel kernel;
  kernel.epsilon = epsilon;
  kernel.r_cut = r_cut;
  double scale = 1.0;
  for (int k = 0; k < 6; ++k) {
    kernel.poly[static_cast<std::size_t>(k)] = coeff(k) / scale;
    scale *= rc2;
  }
  return kernel;
}

ShortRangeKernel fit_grid_force(pm::PmSolver& solver, const GridForceFitOptions& options) {
  const pm::PmConfig& cfg = solver.config();
  const double r_cut = cfg.cutoff();
  const double eps = options.epsilon >= 0.0 ? options.epsilon : default_epsilon(cfg.delta());
  // Separations start just above zero; r = 0 carries no radial direction.
  const auto samples =
      sample_grid_force(solver, options.n_samples, options.n_sources, 1e-3 * r_cut, r_cut, options.seed);
  return fit_grid_force(samples, r_cut, eps);
}

}  // namespace hacc::sr
