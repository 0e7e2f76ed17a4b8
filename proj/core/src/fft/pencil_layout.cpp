#include "hacc/fft/pencil_layout.hpp"

#include <algorithm>
#include <string>

#include "hacc/errors.hpp"

namespace hacc::fft {

std::size_t IndexBox::volume() const {
  std::size_t v = 1;
  for (const auto& e : ext) {
    v *= static_cast<std::size_t>(e.size());
  }
  return v;
}

bool IndexBox::contains(const Index3& g) const {
  return ext[0].contains(g[0]) && ext[1].contains(g[1]) && ext[2].contains(g[2]);
}

IndexBox intersect(const IndexBox& a, const IndexBox& b) {
  IndexBox out;
  for (int d = 0; d < 3; ++d) {
    out.ext[d].begin = std::max(a.ext[d].begin, b.ext[d].begin);
    out.ext[d].end = std::min(a.ext[d].end, b.ext[d].end);
    if (out.ext[d].end < out.ext[d].begin) {
      out.ext[d].end = out.ext[d].begin;
    }
  }
  return out;
}

Extent split_extent(int n, int parts, int index) {
  const long long ln = n;
  return Extent{static_cast<int>(ln * index / parts), static_cast<int>(ln * (index + 1) / parts)};
}

PencilLayout::PencilLayout(Dims dims, RankGrid grid, int pencil_axis) : dims_(dims), grid_(grid) {
  if (grid.r1 <= 0 || grid.r2 <= 0) {
    throw ConfigError("PencilLayout: rank grid dimensions must be positive");
  }
  for (int n : dims) {
    if (n <= 0) {
      throw ConfigError("PencilLayout: grid dimensions must be positive");
    }
  }
  switch (pencil_axis) {
    case 2: order_ = {0, 1, 2}; break;
    case 1: order_ = {0, 2, 1}; break;
    case 0: order_ = {1, 2, 0}; break;
    default: throw ContractError("PencilLayout: pencil axis must be 0, 1 or 2");
  }
  if (grid.r1 > dims[order_[0]] || grid.r2 > dims[order_[1]]) {
    throw ConfigError("PencilLayout: rank grid (" + std::to_string(grid.r1) + "," + std::to_string(grid.r2) +
                      ") exceeds the grid extent along a split axis");
  }
}

IndexBox PencilLayout::owned(int rank) const {
  if (rank < 0 || rank >= n_ranks()) {
    throw ContractError("PencilLayout: rank out of range");
  }
  const int i1 = rank / grid_.r2;
  const int i2 = rank % grid_.r2;
  IndexBox box;
  box.ext[order_[0]] = split_extent(dims_[order_[0]], grid_.r1, i1);
  box.ext[order_[1]] = split_extent(dims_[order_[1]], grid_.r2, i2);
  box.ext[order_[2]] = Extent{0, dims_[order_[2]]};
  return box;
}

namespace {

int part_of(int n, int parts, int i) {
  // Inverse of split_extent: the largest p with p*n/parts <= i.
  int p = static_cast<int>((static_cast<long long>(i) * parts + parts - 1) / n);
  while (p > 0 && split_extent(n, parts, p).begin > i) {
    --p;
  }
  while (p + 1 < parts && split_extent(n, parts, p + 1).begin <= i) {
    ++p;
  }
  return p;
}

}  // namespace

int PencilLayout::owner(const Index3& g) const {
  const int i1 = part_of(dims_[order_[0]], grid_.r1, g[order_[0]]);
  const int i2 = part_of(dims_[order_[1]], grid_.r2, g[order_[1]]);
  return i1 * grid_.r2 + i2;
}

std::size_t PencilLayout::local_index(int rank, const Index3& g) const {
  const IndexBox box = owned(rank);
  const auto& e0 = box.ext[order_[0]];
  const auto& e1 = box.ext[order_[1]];
  const auto& e2 = box.ext[order_[2]];
  return (static_cast<std::size_t>(g[order_[0]] - e0.begin) * static_cast<std::size_t>(e1.size()) +
          static_cast<std::size_t>(g[order_[1]] - e1.begin)) *
             static_cast<std::size_t>(e2.size()) +
         static_cast<std::size_t>(g[order_[2]] - e2.begin);
}

Index3 PencilLayout::global_index(int rank, std::size_t offset) const {
  const IndexBox box = owned(rank);
  const auto n1 = static_cast<std::size_t>(box.ext[order_[1]].size());
  const auto n2 = static_cast<std::size_t>(box.ext[order_[2]].size());
  Index3 g{};
  g[order_[2]] = box.ext[order_[2]].begin + static_cast<int>(offset % n2);
  g[order_[1]] = box.ext[order_[1]].begin + static_cast<int>((offset / n2) % n1);
  g[order_[0]] = box.ext[order_[0]].begin + static_cast<int>(offset / (n1 * n2));
  return g;
}

std::size_t PencilLayout::global_volume() const {
  return static_cast<std::size_t>(dims_[0]) * static_cast<std::size_t>(dims_[1]) * static_cast<std::size_t>(dims_[2]);
}

DistributedField::DistributedField(const PencilLayout& l) : layout(l), blocks(static_cast<std::size_t>(l.n_ranks())) {
  for (int r = 0; r < l.n_ranks(); ++r) {
    blocks[static_cast<std::size_t>(r)].assign(l.local_size(r), Complex{});
  }
}

}  // namespace hacc::fft
