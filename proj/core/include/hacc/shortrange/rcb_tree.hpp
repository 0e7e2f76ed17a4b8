#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "hacc/particles.hpp"

namespace hacc::sr {

struct Aabb {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};

  [[nodiscard]] double extent(int axis) const { return hi[static_cast<std::size_t>(axis)] - lo[static_cast<std::size_t>(axis)]; }
};

struct RcbNode {
  std::size_t begin = 0;
  std::size_t end = 0;
  Aabb box;      // geometric cell produced by the bisection
  Aabb bounds;   // tight bounds of the particles in [begin, end)
  int left = -1;
  int right = -1;
  int split_axis = -1;
  double split = 0.0;

  [[nodiscard]] bool is_leaf() const { return left < 0; }
  [[nodiscard]] std::size_t count() const { return end - begin; }
};

struct RcbTree {
  std::vector<RcbNode> nodes;  // nodes[0] is the root
  std::vector<int> leaves;     // leaf node indices, ordered by particle range
  std::size_t leaf_size = 0;
  // Leaves above leaf_size whose particles could not be separated (all coincident).
  int degenerate_leaves = 0;
};

// Recursive coordinate bisection of particles [begin, end). Each node is split
// at the centre-of-mass coordinate perpendicular to the longest side of its
// cell until it holds at most leaf_size particles. The particle arrays are
// reordered in place so that every node owns a contiguous range.
//
// The cell of the root is `bounds` when given, otherwise the tight bounds.
RcbTree rcb_build(ParticleStore& particles, std::size_t begin, std::size_t end, std::size_t leaf_size,
                  const std::optional<Aabb>& bounds = std::nullopt);

// Three-phase partition of [begin, end) around `split` on `axis`: particles
// with coordinate < split move to the front. Returns the first index of the
// upper part. Exposed for testing.
std::size_t partition_three_phase(ParticleStore& particles, std::size_t begin, std::size_t end, int axis, double split);

}  // namespace hacc::sr
