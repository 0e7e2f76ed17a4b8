#include "hacc/shortrange/neighbor_list.hpp"

#include <algorithm>
#include <cmath>

namespace hacc::sr {

namespace {

double interval_gap(double a_lo, double a_hi, double b_lo, double b_hi) {
  return std::max({0.0, b_lo - a_hi, a_lo - b_hi});
}

double axis_gap(double a_lo, double a_hi, double b_lo, double b_hi, double period) {
  double gap = interval_gap(a_lo, a_hi, b_lo, b_hi);
  if (period > 0.0) {
    gap = std::min({gap, interval_gap(a_lo, a_hi, b_lo + period, b_hi + period),
                    interval_gap(a_lo, a_hi, b_lo - period, b_hi - period)});
  }
  return gap;
}

double box_distance2(const Aabb& a, const Aabb& b, const Periodicity& per) {
  double d2 = 0.0;
  for (std::size_t d = 0; d < 3; ++d) {
    const double g = axis_gap(a.lo[d], a.hi[d], b.lo[d], b.hi[d], per.period[d]);
    d2 += g * g;
  }
  return d2;
}

inline double min_image(double d, double period) {
  return period > 0.0 ? d - period * std::nearbyint(d / period) : d;
}

}  // namespace

void NeighborList::clear() {
  x.clear();
  y.clear();
  z.clear();
  m.clear();
}

void build_neighbor_list(const RcbTree& tree, int leaf, const ParticleStore& p, double r_cut,
                         const Periodicity& periodicity, NeighborList& out) {
  out.clear();
  const Aabb& target = tree.nodes[static_cast<std::size_t>(leaf)].bounds;
  const double r2 = r_cut * r_cut;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const RcbNode& node = tree.nodes[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (box_distance2(target, node.bounds, periodicity) > r2) {
      continue;
    }
    if (!node.is_leaf()) {
      stack.push_back(node.right);
      stack.push_back(node.left);
      continue;
    }
    out.x.insert(out.x.end(), p.x.begin() + static_cast<std::ptrdiff_t>(node.begin),
                 p.x.begin() + static_cast<std::ptrdiff_t>(node.end));
    out.y.insert(out.y.end(), p.y.begin() + static_cast<std::ptrdiff_t>(node.begin),
                 p.y.begin() + static_cast<std::ptrdiff_t>(node.end));
    out.z.insert(out.z.end(), p.z.begin() + static_cast<std::ptrdiff_t>(node.begin),
                 p.z.begin() + static_cast<std::ptrdiff_t>(node.end));
    out.m.insert(out.m.end(), p.mass.begin() + static_cast<std::ptrdiff_t>(node.begin),
                 p.mass.begin() + static_cast<std::ptrdiff_t>(node.end));
  }
}

NeighborList build_neighbor_list(const RcbTree& tree, int leaf, const ParticleStore& particles, double r_cut,
                                 const Periodicity& periodicity) {
  NeighborList out;
  build_neighbor_list(tree, leaf, particles, r_cut, periodicity, out);
  return out;
}

void pp_leaf_forces(const ParticleStore& p, std::size_t begin, std::size_t end, const NeighborList& list,
                    const ShortRangeKernel& kernel, const Periodicity& periodicity, VectorField& acc,
                    bool active_only) {
  const std::size_t n = list.size();
  const double* __restrict lx = list.x.data();
  const double* __restrict ly = list.y.data();
  const double* __restrict lz = list.z.data();
  const double* __restrict lm = list.m.data();
  const double px = periodicity.period[0];
  const double py = periodicity.period[1];
  const double pz = periodicity.period[2];
  const bool periodic = periodicity.any();

  for (std::size_t i = begin; i < end; ++i) {
    if (active_only && p.status[i] != Status::active) {
      continue;
    }
    const double xi = p.x[i];
    const double yi = p.y[i];
    const double zi = p.z[i];
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
    if (periodic) {
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = min_image(lx[j] - xi, px);
        const double dy = min_image(ly[j] - yi, py);
        const double dz = min_image(lz[j] - zi, pz);
        const double s = dx * dx + dy * dy + dz * dz;
        const double f = lm[j] * eval_f_sr(s, kernel);
        ax += f * dx;
        ay += f * dy;
        az += f * dz;
      }
    } else {
#pragma omp simd reduction(+ : ax, ay, az)
      for (std::size_t j = 0; j < n; ++j) {
        const double dx = lx[j] - xi;
        const double dy = ly[j] - yi;
        const double dz = lz[j] - zi;
        const double s = dx * dx + dy * dy + dz * dz;
        const double f = lm[j] * eval_f_sr(s, kernel);
        ax += f * dx;
        ay += f * dy;
        az += f * dz;
      }
    }
    acc.x[i] += ax;
    acc.y[i] += ay;
    acc.z[i] += az;
  }
}

}  // namespace hacc::sr
