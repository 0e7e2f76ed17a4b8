#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hacc {

enum class Status : std::uint8_t { active = 0, passive = 1 };

// One particle, used for packing and message exchange.
struct ParticleRecord {
  double x, y, z;
  double px, py, pz;
  double mass;
  std::uint64_t id;
  Status status;
};

// Structure-of-arrays particle storage. Positions are comoving Mpc and
// momenta p = a^2 dx/dt in internal units.
struct ParticleStore {
  std::vector<double> x, y, z;
  std::vector<double> px, py, pz;
  std::vector<double> mass;
  std::vector<std::uint64_t> id;
  std::vector<Status> status;

  [[nodiscard]] std::size_t size() const { return x.size(); }
  [[nodiscard]] bool empty() const { return x.empty(); }

  void reserve(std::size_t n);
  void resize(std::size_t n);
  void clear();
  void push_back(const ParticleRecord& p);
  [[nodiscard]] ParticleRecord record(std::size_t i) const;
  void set(std::size_t i, const ParticleRecord& p);

  [[nodiscard]] std::size_t count(Status s) const;
};

}  // namespace hacc

namespace hacc {

// Per-particle vector quantity (acceleration, force) in SOA form.
struct VectorField {
  std::vector<double> x, y, z;

  VectorField() = default;
  explicit VectorField(std::size_t n) : x(n, 0.0), y(n, 0.0), z(n, 0.0) {}
  [[nodiscard]] std::size_t size() const { return x.size(); }
};

}  // namespace hacc
