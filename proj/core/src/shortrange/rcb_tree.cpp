#include "hacc/shortrange/rcb_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hacc/errors.hpp"

namespace hacc::sr {

namespace {

std::vector<double>& coord(ParticleStore& p, int axis) {
  switch (axis) {
    case 0: return p.x;
    case 1: return p.y;
    default: return p.z;
  }
}

template <class T>
void apply_swaps(std::vector<T>& v, const std::vector<std::pair<std::size_t, std::size_t>>& swaps) {
  for (const auto& [i, j] : swaps) {
    std::swap(v[i], v[j]);
  }
}

Aabb tight_bounds(const ParticleStore& p, std::size_t begin, std::size_t end) {
  Aabb b;
  b.lo.fill(std::numeric_limits<double>::infinity());
  b.hi.fill(-std::numeric_limits<double>::infinity());
  for (std::size_t i = begin; i < end; ++i) {
    b.lo[0] = std::min(b.lo[0], p.x[i]);
    b.hi[0] = std::max(b.hi[0], p.x[i]);
    b.lo[1] = std::min(b.lo[1], p.y[i]);
    b.hi[1] = std::max(b.hi[1], p.y[i]);
    b.lo[2] = std::min(b.lo[2], p.z[i]);
    b.hi[2] = std::max(b.hi[2], p.z[i]);
  }
  return b;
}

class Builder {
 public:
  Builder(ParticleStore& p, std::size_t leaf_size, RcbTree& tree) : p_(p), leaf_size_(leaf_size), tree_(tree) {}

  int build(std::size_t begin, std::size_t end, const Aabb& box) {
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(RcbNode{});
    {
      RcbNode& node = tree_.nodes.back();
      node.begin = begin;
      node.end = end;
      node.box = box;
      node.bounds = tight_bounds(p_, begin, end);
    }
    if (end - begin <= leaf_size_) {
      tree_.leaves.push_back(index);
      return index;
    }

    const Aabb bounds = tree_.nodes[static_cast<std::size_t>(index)].bounds;
    std::array<int, 3> axes{0, 1, 2};
    std::stable_sort(axes.begin(), axes.end(), [&](int a, int b) { return box.extent(a) > box.extent(b); });

    for (int axis : axes) {
      const auto& c = coord(p_, axis);
      if (!(bounds.hi[static_cast<std::size_t>(axis)] > bounds.lo[static_cast<std::size_t>(axis)])) {
        continue;  // all particles share this coordinate
      }
      double m_sum = 0.0;
      double mx_sum = 0.0;
      for (std::size_t i = begin; i < end; ++i) {
        m_sum += p_.mass[i];
        mx_sum += p_.mass[i] * c[i];
      }
      double split = m_sum > 0.0 ? mx_sum / m_sum : 0.5 * (bounds.lo[axis] + bounds.hi[axis]);
      std::size_t mid = partition_three_phase(p_, begin, end, axis, split);
      if (mid == begin || mid == end) {
        split = 0.5 * (bounds.lo[static_cast<std::size_t>(axis)] + bounds.hi[static_cast<std::size_t>(axis)]);
        mid = partition_three_phase(p_, begin, end, axis, split);
      }
      if (mid == begin || mid == end) {
        continue;
      }
      Aabb left_box = box;
      Aabb right_box = box;
      left_box.hi[static_cast<std::size_t>(axis)] = split;
      right_box.lo[static_cast<std::size_t>(axis)] = split;
      const int left = build(begin, mid, left_box);
      const int right = build(mid, end, right_box);
      RcbNode& node = tree_.nodes[static_cast<std::size_t>(index)];
      node.left = left;
      node.right = right;
      node.split_axis = axis;
      node.split = split;
      return index;
    }

    // Coincident particles: keep them in one oversized leaf.
    ++tree_.degenerate_leaves;
    tree_.leaves.push_back(index);
    return index;
  }

 private:
  ParticleStore& p_;
  std::size_t leaf_size_;
  RcbTree& tree_;
};

}  // namespace

std::size_t partition_three_phase(ParticleStore& p, std::size_t begin, std::size_t end, int axis, double split) {
  if (begin >= end) {
    return begin;
  }
  // Phase 1: scan the split coordinate and record the swaps.
  const auto& c = coord(p, axis);
  std::vector<std::pair<std::size_t, std::size_t>> swaps;
  std::size_t i = begin;
  std::size_t j = end - 1;
  while (true) {
    while (i <= j && c[i] < split) {
      ++i;
    }
    while (i <= j && c[j] >= split) {
      if (j == begin) {
        break;
      }
      --j;
    }
    if (i < j && c[j] < split) {
      swaps.emplace_back(i, j);
      ++i;
      --j;
    } else {
      break;
    }
  }
  // Phase 2: positions and momenta.
  apply_swaps(p.x, swaps);
  apply_swaps(p.y, swaps);
  apply_swaps(p.z, swaps);
  apply_swaps(p.px, swaps);
  apply_swaps(p.py, swaps);
  apply_swaps(p.pz, swaps);
  // Phase 3: everything else.
  apply_swaps(p.mass, swaps);
  apply_swaps(p.id, swaps);
  apply_swaps(p.status, swaps);
  return i;
}

RcbTree rcb_build(ParticleStore& particles, std::size_t begin, std::size_t end, std::size_t leaf_size,
                  const std::optional<Aabb>& bounds) {
  if (begin >= end || end > particles.size()) {
    throw ContractError("rcb_build: empty or out-of-range particle range");
  }
  if (leaf_size == 0) {
    throw ConfigError("rcb_build: leaf size must be positive");
  }
  for (std::size_t i = begin; i < end; ++i) {
    if (!std::isfinite(particles.x[i]) || !std::isfinite(particles.y[i]) || !std::isfinite(particles.z[i])) {
      throw ContractError("rcb_build: non-finite particle coordinate");
    }
  }
  RcbTree tree;
  tree.leaf_size = leaf_size;
  tree.nodes.reserve(2 * ((end - begin) / leaf_size + 1) * 2);
  const Aabb root = bounds ? *bounds : tight_bounds(particles, begin, end);
  Builder(particles, leaf_size, tree).build(begin, end, root);
  return tree;
}

}  // namespace hacc::sr
