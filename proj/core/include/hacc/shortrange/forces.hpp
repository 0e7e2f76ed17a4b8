#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "hacc/particles.hpp"
#include "hacc/shortrange/kernel.hpp"
#include "hacc/shortrange/neighbor_list.hpp"
#include "hacc/shortrange/rcb_tree.hpp"

namespace hacc::sr {

enum class ShortRangeMode { tree, p3m_direct };

// "tree" or "p3m"/"p3m_direct"; anything else throws ConfigError.
ShortRangeMode parse_mode(std::string_view name);
std::string_view to_string(ShortRangeMode mode);

struct ShortRangeOptions {
  ShortRangeMode mode = ShortRangeMode::tree;
  std::size_t leaf_size = 200;
  Periodicity periodicity;
  bool active_only = true;
  std::optional<Aabb> bounds;
};

struct ShortRangeStats {
  std::size_t leaves = 0;
  std::size_t list_entries = 0;   // sum of neighbour-list lengths over leaves
  std::size_t interactions = 0;   // target particles x list entries
  // wall-clock seconds
  double build_seconds = 0.0;
  double walk_seconds = 0.0;
  double kernel_seconds = 0.0;
};

// Short-range accelerations (G = 1, a = 1) for every particle of the store.
// TREE mode reorders the store in place; the result is aligned with the
// store's order on return. PASSIVE particles get zero when active_only is set.
VectorField short_range_forces(ParticleStore& particles, const ShortRangeKernel& kernel,
                               const ShortRangeOptions& options, ShortRangeStats* stats = nullptr);

}  // namespace hacc::sr
