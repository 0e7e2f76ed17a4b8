#pragma once

#include <array>

namespace hacc::domain {

// Regular 3-D block decomposition of a periodic cube over d1*d2*d3 logical
// ranks. Rank r has coordinates (c1, c2, c3) with r = (c1*d2 + c2)*d3 + c3.
// Blocks are half-open: block c on an axis covers [c*L/d, (c+1)*L/d).
struct DomainGeometry {
  double box_length = 0.0;
  std::array<int, 3> dims{1, 1, 1};

  [[nodiscard]] int n_ranks() const { return dims[0] * dims[1] * dims[2]; }
  [[nodiscard]] std::array<int, 3> coords(int rank) const;
  [[nodiscard]] int rank_of(const std::array<int, 3>& c) const;

  [[nodiscard]] double lower(int axis, int c) const;
  [[nodiscard]] double upper(int axis, int c) const;
  [[nodiscard]] double min_extent() const;

  // Block index along `axis` containing the coordinate after wrapping into [0, L).
  [[nodiscard]] int block_index(int axis, double v) const;
  [[nodiscard]] int owner(double x, double y, double z) const;
};

// Throws ConfigError for non-positive dims or box, and when
// dims product differs from comm_size.
DomainGeometry decompose(double box_length, const std::array<int, 3>& dims, int comm_size);

// Wraps v into [0, L).
double wrap(double v, double box_length);

}  // namespace hacc::domain
