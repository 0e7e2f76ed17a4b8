#include "hacc/domain/overload.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "hacc/errors.hpp"

namespace hacc::domain {

namespace {

struct AxisCopy {
  int block;
  double shift;
};

// Blocks along one axis whose grown extent contains v (already wrapped),
// together with the periodic shift that brings v into that extent.
std::vector<AxisCopy> axis_copies(const DomainGeometry& g, int axis, double v, double depth) {
  const int d = g.dims[static_cast<std::size_t>(axis)];
  if (d == 1) {
    return {{0, 0.0}};
  }
  std::vector<AxisCopy> out;
  const double L = g.box_length;
  for (int c = 0; c < d; ++c) {
    const double lo = g.lower(axis, c) - depth;
    const double hi = g.upper(axis, c) + depth;
    for (double shift : {0.0, -L, L}) {
      const double s = v + shift;
      if (s >= lo && s < hi) {
        out.push_back({c, shift});
        break;
      }
    }
  }
  return out;
}

// Calls emit(rank, record) for the ACTIVE copy and every PASSIVE replica.
template <class Emit>
void distribute(const DomainGeometry& g, double depth, ParticleRecord rec, Emit&& emit) {
  rec.x = wrap(rec.x, g.box_length);
  rec.y = wrap(rec.y, g.box_length);
  rec.z = wrap(rec.z, g.box_length);
  const int owner = g.owner(rec.x, rec.y, rec.z);
  const auto cx = axis_copies(g, 0, rec.x, depth);
  const auto cy = axis_copies(g, 1, rec.y, depth);
  const auto cz = axis_copies(g, 2, rec.z, depth);
  for (const AxisCopy& a : cx) {
    for (const AxisCopy& b : cy) {
      for (const AxisCopy& c : cz) {
        const int rank = g.rank_of({a.block, b.block, c.block});
        ParticleRecord copy = rec;
        copy.x += a.shift;
        copy.y += b.shift;
        copy.z += c.shift;
        copy.status = rank == owner ? Status::active : Status::passive;
        emit(rank, copy);
      }
    }
  }
}

// Ranks within two blocks of `rank` on every axis: a particle that stayed in
// its overloaded region has its new owner within one block and replicas
// within one block of that owner.
std::vector<int> exchange_peers(const DomainGeometry& g, int rank) {
  const auto c = g.coords(rank);
  std::set<int> peers;
  for (int ox = -2; ox <= 2; ++ox) {
    for (int oy = -2; oy <= 2; ++oy) {
      for (int oz = -2; oz <= 2; ++oz) {
        std::array<int, 3> n{c[0] + ox, c[1] + oy, c[2] + oz};
        for (std::size_t a = 0; a < 3; ++a) {
          n[a] = ((n[a] % g.dims[a]) + g.dims[a]) % g.dims[a];
        }
        peers.insert(g.rank_of(n));
      }
    }
  }
  return {peers.begin(), peers.end()};
}

bool inside(const sr::Aabb& box, double x, double y, double z) {
  return x >= box.lo[0] && x < box.hi[0] && y >= box.lo[1] && y < box.hi[1] && z >= box.lo[2] && z < box.hi[2];
}

// Same test restricted to split axes; unsplit axes are periodic inside a rank.
bool inside_split(const DomainGeometry& g, const sr::Aabb& box, double x, double y, double z) {
  const double pos[3] = {x, y, z};
  for (std::size_t a = 0; a < 3; ++a) {
    if (g.dims[a] > 1 && !(pos[a] >= box.lo[a] && pos[a] < box.hi[a])) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::size_t OverloadedSet::active_total() const {
  std::size_t n = 0;
  for (const auto& r : ranks) {
    n += r.count(Status::active);
  }
  return n;
}

std::size_t OverloadedSet::stored_total() const {
  std::size_t n = 0;
  for (const auto& r : ranks) {
    n += r.size();
  }
  return n;
}

sr::Periodicity OverloadedSet::periodicity() const {
  sr::Periodicity p;
  for (std::size_t a = 0; a < 3; ++a) {
    p.period[a] = geometry.dims[a] == 1 ? geometry.box_length : 0.0;
  }
  return p;
}

sr::Aabb OverloadedSet::region(int rank) const {
  const auto c = geometry.coords(rank);
  sr::Aabb box;
  for (std::size_t a = 0; a < 3; ++a) {
    if (geometry.dims[a] == 1) {
      box.lo[a] = 0.0;
      box.hi[a] = geometry.box_length;
    } else {
      box.lo[a] = geometry.lower(static_cast<int>(a), c[a]) - depth;
      box.hi[a] = geometry.upper(static_cast<int>(a), c[a]) + depth;
    }
  }
  return box;
}

void validate_depth(const DomainGeometry& geometry, double depth) {
  if (!(depth >= 0.0)) {
    throw ConfigError("overload depth must be non-negative");
  }
  for (std::size_t a = 0; a < 3; ++a) {
    if (geometry.dims[a] == 1) {
      continue;
    }
    for (int c = 0; c < geometry.dims[a]; ++c) {
      const double extent = geometry.upper(static_cast<int>(a), c) - geometry.lower(static_cast<int>(a), c);
      if (depth >= 0.5 * extent) {
        std::ostringstream msg;
        msg << "overload depth " << depth << " Mpc must be below half the block extent " << extent << " Mpc";
        throw ConfigError(msg.str());
      }
    }
  }
}

OverloadedSet assign_and_overload(const ParticleStore& particles, const DomainGeometry& geometry, double depth) {
  validate_depth(geometry, depth);
  OverloadedSet set{geometry, depth, std::vector<ParticleStore>(static_cast<std::size_t>(geometry.n_ranks()))};
  for (std::size_t i = 0; i < particles.size(); ++i) {
    distribute(geometry, depth, particles.record(i),
               [&](int rank, const ParticleRecord& r) { set.ranks[static_cast<std::size_t>(rank)].push_back(r); });
  }
  return set;
}

void refresh_overload(OverloadedSet& set, Communicator& comm) {
  const DomainGeometry& g = set.geometry;
  const int n = g.n_ranks();
  if (comm.size() != n) {
    throw ContractError("refresh_overload: communicator size does not match the geometry");
  }
  comm.begin_phase();

  std::vector<std::vector<int>> peers(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    peers[static_cast<std::size_t>(r)] = exchange_peers(g, r);
  }

  for (int r = 0; r < n; ++r) {
    const ParticleStore& store = set.ranks[static_cast<std::size_t>(r)];
    const sr::Aabb region = set.region(r);
    std::unordered_map<int, std::vector<ParticleRecord>> outbox;
    for (int p : peers[static_cast<std::size_t>(r)]) {
      outbox[p];
    }
    for (std::size_t i = 0; i < store.size(); ++i) {
      if (store.status[i] != Status::active) {
        continue;
      }
      if (!inside_split(g, region, store.x[i], store.y[i], store.z[i])) {
        std::ostringstream msg;
        msg << "particle " << store.id[i] << " escaped the overloaded region of rank " << r << " at (" << store.x[i]
            << ", " << store.y[i] << ", " << store.z[i] << "); refresh more often or increase the overload depth";
        throw OverloadEscapeError(msg.str());
      }
      distribute(g, set.depth, store.record(i), [&](int dst, const ParticleRecord& rec) {
        auto it = outbox.find(dst);
        if (it == outbox.end()) {
          throw ContractError("refresh_overload: replica destination outside the exchange neighbourhood");
        }
        it->second.push_back(rec);
      });
    }
    for (int p : peers[static_cast<std::size_t>(r)]) {
      const auto& records = outbox[p];
      comm.send_values<ParticleRecord>(r, p, records);
    }
  }

  for (int r = 0; r < n; ++r) {
    ParticleStore fresh;
    fresh.reserve(set.ranks[static_cast<std::size_t>(r)].size());
    for (int p : peers[static_cast<std::size_t>(r)]) {
      for (const ParticleRecord& rec : comm.receive_values<ParticleRecord>(r, p)) {
        fresh.push_back(rec);
      }
    }
    set.ranks[static_cast<std::size_t>(r)] = std::move(fresh);
  }
}

std::string check_invariants(const OverloadedSet& set) {
  const DomainGeometry& g = set.geometry;
  std::unordered_map<std::uint64_t, int> active_rank;
  for (int r = 0; r < g.n_ranks(); ++r) {
    const ParticleStore& s = set.ranks[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.status[i] != Status::active) {
        continue;
      }
      if (g.owner(s.x[i], s.y[i], s.z[i]) != r) {
        return "ACTIVE particle " + std::to_string(s.id[i]) + " is not owned by rank " + std::to_string(r);
      }
      if (!active_rank.emplace(s.id[i], r).second) {
        return "particle " + std::to_string(s.id[i]) + " is ACTIVE in more than one rank";
      }
    }
  }
  for (int r = 0; r < g.n_ranks(); ++r) {
    const ParticleStore& s = set.ranks[static_cast<std::size_t>(r)];
    const sr::Aabb region = set.region(r);
    const auto c = g.coords(r);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.status[i] != Status::passive) {
        continue;
      }
      const std::string id = std::to_string(s.id[i]);
      if (!inside(region, s.x[i], s.y[i], s.z[i])) {
        return "PASSIVE particle " + id + " lies outside the overloaded region of rank " + std::to_string(r);
      }
      const std::array<double, 3> pos{s.x[i], s.y[i], s.z[i]};
      bool in_block = true;
      for (std::size_t a = 0; a < 3; ++a) {
        const int ai = static_cast<int>(a);
        in_block = in_block && pos[a] >= g.lower(ai, c[a]) && pos[a] < g.upper(ai, c[a]);
      }
      if (in_block) {
        return "PASSIVE particle " + id + " lies inside the block of rank " + std::to_string(r);
      }
      auto it = active_rank.find(s.id[i]);
      if (it == active_rank.end()) {
        return "PASSIVE particle " + id + " has no ACTIVE owner";
      }
      if (it->second == r || it->second != g.owner(pos[0], pos[1], pos[2])) {
        return "PASSIVE particle " + id + " is inconsistent with its owner";
      }
    }
  }
  return {};
}

ParticleStore collect_active(const OverloadedSet& set) {
  std::vector<ParticleRecord> all;
  for (const auto& s : set.ranks) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s.status[i] == Status::active) {
        ParticleRecord r = s.record(i);
        r.x = wrap(r.x, set.geometry.box_length);
        r.y = wrap(r.y, set.geometry.box_length);
        r.z = wrap(r.z, set.geometry.box_length);
        all.push_back(r);
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const ParticleRecord& a, const ParticleRecord& b) { return a.id < b.id; });
  ParticleStore out;
  out.reserve(all.size());
  for (const auto& r : all) {
    out.push_back(r);
  }
  return out;
}

}  // namespace hacc::domain
