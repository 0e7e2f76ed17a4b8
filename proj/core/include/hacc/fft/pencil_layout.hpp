#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace hacc::fft {

using Dims = std::array<int, 3>;
using Index3 = std::array<int, 3>;
using Complex = std::complex<double>;

// Logical 2-D arrangement of ranks. rank = i1 * r2 + i2.
struct RankGrid {
  int r1 = 1;
  int r2 = 1;

  [[nodiscard]] int size() const { return r1 * r2; }
  friend bool operator==(const RankGrid&, const RankGrid&) = default;
};

// Half-open index range [begin, end).
struct Extent {
  int begin = 0;
  int end = 0;

  [[nodiscard]] int size() const { return end > begin ? end - begin : 0; }
  [[nodiscard]] bool contains(int i) const { return i >= begin && i < end; }
  friend bool operator==(const Extent&, const Extent&) = default;
};

struct IndexBox {
  std::array<Extent, 3> ext;

  [[nodiscard]] std::size_t volume() const;
  [[nodiscard]] bool empty() const { return volume() == 0; }
  [[nodiscard]] bool contains(const Index3& g) const;
  friend bool operator==(const IndexBox&, const IndexBox&) = default;
};

IndexBox intersect(const IndexBox& a, const IndexBox& b);

// Near-equal contiguous split of n points into `parts`; part `index` gets
// [index*n/parts, (index+1)*n/parts).
Extent split_extent(int n, int parts, int index);

// A pencil layout keeps one axis (the pencil axis) complete on every rank and
// splits the other two over the rank grid: the first split axis over r1, the
// second over r2. Local storage runs over (split0, split1, pencil) with the
// pencil axis fastest, so every 1-D line is contiguous.
//
//   pencil z: x over r1, y over r2
//   pencil y: x over r1, z over r2
//   pencil x: y over r1, z over r2
class PencilLayout {
 public:
  PencilLayout(Dims dims, RankGrid grid, int pencil_axis);

  [[nodiscard]] const Dims& dims() const { return dims_; }
  [[nodiscard]] const RankGrid& rank_grid() const { return grid_; }
  [[nodiscard]] int pencil_axis() const { return order_[2]; }
  [[nodiscard]] int n_ranks() const { return grid_.size(); }
  // Axes from slowest to fastest in local storage.
  [[nodiscard]] const std::array<int, 3>& order() const { return order_; }

  [[nodiscard]] IndexBox owned(int rank) const;
  [[nodiscard]] std::size_t local_size(int rank) const { return owned(rank).volume(); }
  [[nodiscard]] int owner(const Index3& g) const;
  [[nodiscard]] std::size_t local_index(int rank, const Index3& g) const;
  // Global index of local element `offset` on `rank`.
  [[nodiscard]] Index3 global_index(int rank, std::size_t offset) const;
  [[nodiscard]] std::size_t global_volume() const;

  friend bool operator==(const PencilLayout& a, const PencilLayout& b) {
    return a.dims_ == b.dims_ && a.grid_ == b.grid_ && a.order_ == b.order_;
  }

 private:
  Dims dims_;
  RankGrid grid_;
  std::array<int, 3> order_;
};

// Complex data distributed over the ranks of a layout.
struct DistributedField {
  PencilLayout layout;
  std::vector<std::vector<Complex>> blocks;

  explicit DistributedField(const PencilLayout& l);
};

}  // namespace hacc::fft
