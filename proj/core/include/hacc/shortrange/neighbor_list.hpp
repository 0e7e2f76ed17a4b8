#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "hacc/particles.hpp"
#include "hacc/shortrange/kernel.hpp"
#include "hacc/shortrange/rcb_tree.hpp"

namespace hacc::sr {

// Per-axis periodic length; 0 marks a non-periodic axis.
struct Periodicity {
  std::array<double, 3> period{0.0, 0.0, 0.0};

  [[nodiscard]] bool any() const { return period[0] > 0.0 || period[1] > 0.0 || period[2] > 0.0; }
  static Periodicity cubic(double length) { return Periodicity{{length, length, length}}; }
};

// Interaction list shared by every particle of one leaf: coordinates and
// masses of all candidate neighbours gathered into contiguous arrays.
struct NeighborList {
  std::vector<double> x, y, z, m;

  [[nodiscard]] std::size_t size() const { return x.size(); }
  void clear();
};

// Gathers every particle in leaves whose bounds lie within r_cut of the
// target leaf's bounds (periodic distance on periodic axes). Complete for
// r_cut, not minimal.
void build_neighbor_list(const RcbTree& tree, int leaf, const ParticleStore& particles, double r_cut,
                         const Periodicity& periodicity, NeighborList& out);

NeighborList build_neighbor_list(const RcbTree& tree, int leaf, const ParticleStore& particles, double r_cut,
                                 const Periodicity& periodicity = {});

// Adds sum_j m_j (x_j - x_i) f_SR(|x_j - x_i|^2) to acc for particles
// [begin, end), using minimum-image separations on periodic axes. With
// active_only, PASSIVE targets are skipped.
void pp_leaf_forces(const ParticleStore& particles, std::size_t begin, std::size_t end, const NeighborList& list,
                    const ShortRangeKernel& kernel, const Periodicity& periodicity, VectorField& acc,
                    bool active_only = true);

}  // namespace hacc::sr
