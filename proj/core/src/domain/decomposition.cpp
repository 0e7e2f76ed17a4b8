#include "hacc/domain/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hacc/errors.hpp"

namespace hacc::domain {

double wrap(double v, double box_length) {
  double w = std::fmod(v, box_length);
  if (w < 0.0) {
    w += box_length;
  }
  // fmod of a tiny negative value can round up to exactly L.
  return w >= box_length ? 0.0 : w;
}

std::array<int, 3> DomainGeometry::coords(int rank) const {
  if (rank < 0 || rank >= n_ranks()) {
    throw ContractError("DomainGeometry: rank " + std::to_string(rank) + " out of range");
  }
  return {rank / (dims[1] * dims[2]), (rank / dims[2]) % dims[1], rank % dims[2]};
}

int DomainGeometry::rank_of(const std::array<int, 3>& c) const {
  return (c[0] * dims[1] + c[1]) * dims[2] + c[2];
}

double DomainGeometry::lower(int axis, int c) const {
  return box_length * static_cast<double>(c) / static_cast<double>(dims[static_cast<std::size_t>(axis)]);
}

double DomainGeometry::upper(int axis, int c) const {
  const int d = dims[static_cast<std::size_t>(axis)];
  return c + 1 == d ? box_length : lower(axis, c + 1);
}

double DomainGeometry::min_extent() const {
  double m = box_length;
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < dims[static_cast<std::size_t>(a)]; ++c) {
      m = std::min(m, upper(a, c) - lower(a, c));
    }
  }
  return m;
}

int DomainGeometry::block_index(int axis, double v) const {
  const double w = wrap(v, box_length);
  const int d = dims[static_cast<std::size_t>(axis)];
  int c = std::clamp(static_cast<int>(w * d / box_length), 0, d - 1);
  // The estimate can be off by one near a boundary; settle it against the
  // exact block edges so the half-open tie rule holds.
  while (c > 0 && w < lower(axis, c)) {
    --c;
  }
  while (c + 1 < d && w >= upper(axis, c)) {
    ++c;
  }
  return c;
}

int DomainGeometry::owner(double x, double y, double z) const {
  return rank_of({block_index(0, x), block_index(1, y), block_index(2, z)});
}

DomainGeometry decompose(double box_length, const std::array<int, 3>& dims, int comm_size) {
  if (!(box_length > 0.0)) {
    throw ConfigError("decompose: box length must be positive");
  }
  for (int d : dims) {
    if (d <= 0) {
      throw ConfigError("decompose: rank dims must be positive");
    }
  }
  const long product = static_cast<long>(dims[0]) * dims[1] * dims[2];
  if (product != comm_size) {
    throw ConfigError("decompose: rank dims " + std::to_string(dims[0]) + "x" + std::to_string(dims[1]) + "x" +
                      std::to_string(dims[2]) + " do not match communicator size " + std::to_string(comm_size));
  }
  return DomainGeometry{box_length, dims};
}

}  // namespace hacc::domain
