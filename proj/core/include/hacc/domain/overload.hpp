#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hacc/comm.hpp"
#include "hacc/domain/decomposition.hpp"
#include "hacc/particles.hpp"
#include "hacc/shortrange/neighbor_list.hpp"
#include "hacc/shortrange/rcb_tree.hpp"

namespace hacc::domain {

// Per-rank particle stores with particle overloading. Each particle is
// ACTIVE in the rank owning its position and PASSIVE in every other rank
// whose block, grown by `depth` on each side, contains it. Replication only
// happens along axes that are split (d > 1); an unsplit axis is periodic
// inside the rank. Replica coordinates are shifted by +-L where needed so
// every rank sees a contiguous region.
struct OverloadedSet {
  DomainGeometry geometry;
  double depth = 0.0;
  std::vector<ParticleStore> ranks;

  [[nodiscard]] std::size_t active_total() const;
  [[nodiscard]] std::size_t stored_total() const;

  // Periodic lengths for short-range forces inside a rank.
  [[nodiscard]] sr::Periodicity periodicity() const;
  // Block grown by depth on split axes, the whole box on unsplit ones.
  [[nodiscard]] sr::Aabb region(int rank) const;
};

// Throws ConfigError when depth < 0 or depth >= min block extent / 2 on a split axis.
void validate_depth(const DomainGeometry& geometry, double depth);

// Distributes a global particle load. Input positions are wrapped into the box.
OverloadedSet assign_and_overload(const ParticleStore& particles, const DomainGeometry& geometry, double depth);

// Drops every PASSIVE copy and rebuilds ownership and replicas from the
// ACTIVE particles through the communicator. Particles that crossed a block
// face change owner. Throws OverloadEscapeError when an ACTIVE particle has
// left its rank's overloaded region since the previous refresh.
void refresh_overload(OverloadedSet& set, Communicator& comm);

// Empty when every overloading invariant holds, otherwise a description of
// the first violation.
std::string check_invariants(const OverloadedSet& set);

// All ACTIVE particles, positions wrapped into the box, sorted by id.
ParticleStore collect_active(const OverloadedSet& set);

}  // namespace hacc::domain
