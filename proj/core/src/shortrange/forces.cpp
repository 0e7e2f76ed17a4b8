#include "hacc/shortrange/forces.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hacc/errors.hpp"

namespace hacc::sr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

VectorField tree_forces(ParticleStore& p, const ShortRangeKernel& kernel, const ShortRangeOptions& opt,
                        ShortRangeStats* stats) {
  VectorField acc(p.size());
  auto t0 = Clock::now();
  const RcbTree tree = rcb_build(p, 0, p.size(), opt.leaf_size, opt.bounds);
  const double build = seconds_since(t0);

  const auto n_leaves = static_cast<std::ptrdiff_t>(tree.leaves.size());
  std::size_t list_entries = 0;
  std::size_t interactions = 0;
  double walk = 0.0;
  double kern = 0.0;

  const auto t_region = Clock::now();
#pragma omp parallel reduction(+ : list_entries, interactions, walk, kern)
  {
    NeighborList list;
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t l = 0; l < n_leaves; ++l) {
      const int leaf = tree.leaves[static_cast<std::size_t>(l)];
      const RcbNode& node = tree.nodes[static_cast<std::size_t>(leaf)];
      std::size_t targets = node.count();
      if (opt.active_only) {
        targets = 0;
        for (std::size_t i = node.begin; i < node.end; ++i) {
          targets += p.status[i] == Status::active ? 1 : 0;
        }
        if (targets == 0) {
          continue;
        }
      }
      auto tw = Clock::now();
      build_neighbor_list(tree, leaf, p, kernel.r_cut, opt.periodicity, list);
      auto tk = Clock::now();
      pp_leaf_forces(p, node.begin, node.end, list, kernel, opt.periodicity, acc, opt.active_only);
      kern += seconds_since(tk);
      walk += std::chrono::duration<double>(tk - tw).count();
      list_entries += list.size();
      interactions += targets * list.size();
    }
  }

  // walk and kern are summed over threads; report wall time split in the same ratio
  const double region = seconds_since(t_region);
  const double busy = walk + kern;
  if (stats != nullptr) {
    stats->leaves = tree.leaves.size();
    stats->list_entries = list_entries;
    stats->interactions = interactions;
    stats->build_seconds = build;
    stats->walk_seconds = busy > 0.0 ? region * walk / busy : 0.0;
    stats->kernel_seconds = busy > 0.0 ? region * kern / busy : 0.0;
  }
  return acc;
}

// Chaining-mesh direct summation: cells of at least r_cut per side, each
// target loops over the unique cells of its 3x3x3 neighbourhood.
VectorField p3m_forces(const ParticleStore& p, const ShortRangeKernel& kernel, const ShortRangeOptions& opt,
                       ShortRangeStats* stats) {
  const std::size_t n = p.size();
  VectorField acc(n);
  const auto t0 = Clock::now();

  std::array<double, 3> origin{};
  std::array<double, 3> span{};
  std::array<int, 3> cells{};
  const std::vector<double>* c[3] = {&p.x, &p.y, &p.z};
  for (std::size_t d = 0; d < 3; ++d) {
    const double period = opt.periodicity.period[d];
    if (period > 0.0) {
      origin[d] = 0.0;
      span[d] = period;
    } else {
      const auto [lo, hi] = std::minmax_element(c[d]->begin(), c[d]->end());
      origin[d] = *lo;
      span[d] = std::max(*hi - *lo, 0.0);
    }
    cells[d] = std::max(1, static_cast<int>(std::floor(span[d] / kernel.r_cut)));
    cells[d] = std::min(cells[d], 1024);
  }

  auto cell_coord = [&](std::size_t d, double v) {
    double u = (v - origin[d]) / span[d];
    if (opt.periodicity.period[d] > 0.0) {
      u -= std::floor(u);
    }
    if (!(span[d] > 0.0)) {
      return 0;
    }
    int i = static_cast<int>(u * cells[d]);
    return std::clamp(i, 0, cells[d] - 1);
  };
  const std::size_t n_cells = static_cast<std::size_t>(cells[0]) * static_cast<std::size_t>(cells[1]) *
                              static_cast<std::size_t>(cells[2]);
  auto cell_index = [&](int i, int j, int k) {
    return (static_cast<std::size_t>(i) * static_cast<std::size_t>(cells[1]) + static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(cells[2]) +
           static_cast<std::size_t>(k);
  };

  // Counting sort into cell order with contiguous SOA copies.
  std::vector<std::array<int, 3>> home(n);
  std::vector<std::size_t> start(n_cells + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    home[i] = {cell_coord(0, p.x[i]), cell_coord(1, p.y[i]), cell_coord(2, p.z[i])};
    ++start[cell_index(home[i][0], home[i][1], home[i][2]) + 1];
  }
  for (std::size_t cidx = 0; cidx < n_cells; ++cidx) {
    start[cidx + 1] += start[cidx];
  }
  NeighborList sorted;
  sorted.x.resize(n);
  sorted.y.resize(n);
  sorted.z.resize(n);
  sorted.m.resize(n);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t slot = fill[cell_index(home[i][0], home[i][1], home[i][2])]++;
      sorted.x[slot] = p.x[i];
      sorted.y[slot] = p.y[i];
      sorted.z[slot] = p.z[i];
      sorted.m[slot] = p.mass[i];
    }
  }

  // Unique neighbour offsets per axis (wrapping on periodic axes).
  auto neighbours = [&](std::size_t d, int home_i) {
    std::vector<int> out;
    const bool periodic = opt.periodicity.period[d] > 0.0;
    for (int o = -1; o <= 1; ++o) {
      int j = home_i + o;
      if (periodic) {
        j = ((j % cells[d]) + cells[d]) % cells[d];
      } else if (j < 0 || j >= cells[d]) {
        continue;
      }
      if (std::find(out.begin(), out.end(), j) == out.end()) {
        out.push_back(j);
      }
    }
    return out;
  };

  std::array<std::vector<std::vector<int>>, 3> nb;
  for (std::size_t d = 0; d < 3; ++d) {
    for (int ci = 0; ci < cells[d]; ++ci) {
      nb[d].push_back(neighbours(d, ci));
    }
  }

  const Periodicity& per = opt.periodicity;
  const bool periodic = per.any();
  std::size_t interactions = 0;

#pragma omp parallel for schedule(dynamic, 256) reduction(+ : interactions)
  for (std::size_t i = 0; i < n; ++i) {
    if (opt.active_only && p.status[i] != Status::active) {
      continue;
    }
    const double xi = p.x[i];
    const double yi = p.y[i];
    const double zi = p.z[i];
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
    for (int ci : nb[0][static_cast<std::size_t>(home[i][0])]) {
      for (int cj : nb[1][static_cast<std::size_t>(home[i][1])]) {
        for (int ck : nb[2][static_cast<std::size_t>(home[i][2])]) {
          const std::size_t cidx = cell_index(ci, cj, ck);
          for (std::size_t j = start[cidx]; j < start[cidx + 1]; ++j) {
            double dx = sorted.x[j] - xi;
            double dy = sorted.y[j] - yi;
            double dz = sorted.z[j] - zi;
            if (periodic) {
              if (per.period[0] > 0.0) dx -= per.period[0] * std::nearbyint(dx / per.period[0]);
              if (per.period[1] > 0.0) dy -= per.period[1] * std::nearbyint(dy / per.period[1]);
              if (per.period[2] > 0.0) dz -= per.period[2] * std::nearbyint(dz / per.period[2]);
            }
            const double s = dx * dx + dy * dy + dz * dz;
            const double f = sorted.m[j] * eval_f_sr(s, kernel);
            ax += f * dx;
            ay += f * dy;
            az += f * dz;
          }
          interactions += start[cidx + 1] - start[cidx];
        }
      }
    }
    acc.x[i] = ax;
    acc.y[i] = ay;
    acc.z[i] = az;
  }

  if (stats != nullptr) {
    *stats = ShortRangeStats{};
    stats->interactions = interactions;
    stats->kernel_seconds = seconds_since(t0);
  }
  return acc;
}

}  // namespace

ShortRangeMode parse_mode(std::string_view name) {
  if (name == "tree" || name == "TREE") {
    return ShortRangeMode::tree;
  }
  if (name == "p3m" || name == "P3M" || name == "p3m_direct" || name == "P3M_DIRECT") {
    return ShortRangeMode::p3m_direct;
  }
  throw ConfigError("short-range mode '" + std::string(name) + "' is not available (expected TREE or P3M_DIRECT)");
}

std::string_view to_string(ShortRangeMode mode) {
  return mode == ShortRangeMode::tree ? "TREE" : "P3M_DIRECT";
}

VectorField short_range_forces(ParticleStore& particles, const ShortRangeKernel& kernel,
                               const ShortRangeOptions& options, ShortRangeStats* stats) {
  if (particles.empty()) {
    if (stats != nullptr) {
      *stats = ShortRangeStats{};
    }
    return VectorField{};
  }
  if (!(kernel.r_cut > 0.0)) {
    throw ConfigError("short_range_forces: kernel cutoff must be positive");
  }
  switch (options.mode) {
    case ShortRangeMode::tree: return tree_forces(particles, kernel, options, stats);
    case ShortRangeMode::p3m_direct: return p3m_forces(particles, kernel, options, stats);
  }
  throw ConfigError("short_range_forces: unknown mode");
}

}  // namespace hacc::sr
