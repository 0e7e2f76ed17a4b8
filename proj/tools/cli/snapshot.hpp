#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hacc/cosmology.hpp"
#include "hacc/particles.hpp"

namespace hacc::cli {

// Binary snapshot, little-endian throughout:
//
//   offset  size  field
//        0     8  magic "HACCMINI"
//        8     4  uint32 format version
//       12     4  uint32 reserved (0)
//       16     8  uint64 particle count N
//       24     8  float64 box length, Mpc
//       32     8  float64 scale factor
//       40     8  float64 omega_m
//       48     8  float64 omega_lambda
//       56     8  float64 h
//       64     8  uint64 seed
//       72        x[N], y[N], z[N], px[N], py[N], pz[N] as float32, then id[N] as uint64
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 72;

struct Snapshot {
  double box_length = 0.0;
  double a = 1.0;
  CosmologyParams cosmo;
  std::uint64_t seed = 0;
  std::vector<float> x, y, z, px, py, pz;
  std::vector<std::uint64_t> id;

  [[nodiscard]] std::size_t size() const { return id.size(); }
  [[nodiscard]] std::size_t file_bytes() const { return kSnapshotHeaderBytes + size() * (6 * 4 + 8); }
};

// ACTIVE particles sorted by id, keeping ids that are multiples of stride.
Snapshot make_snapshot(const ParticleStore& particles, double box_length, double a, const CosmologyParams& cosmo,
                       std::uint64_t seed, std::size_t stride = 1);

std::vector<std::byte> encode_snapshot(const Snapshot& snap);
// Throws IoError on a bad magic, an unsupported version or a size mismatch.
Snapshot decode_snapshot(const std::vector<std::byte>& bytes);

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace hacc::cli
