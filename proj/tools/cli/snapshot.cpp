#include "snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <numeric>

#include "hacc/errors.hpp"

namespace hacc::cli {

namespace {

constexpr char kMagic[8] = {'H', 'A', 'C', 'C', 'M', 'I', 'N', 'I'};

class Writer {
 public:
  explicit Writer(std::vector<std::byte>& out) : out_(out) {}
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f32(float v) { put(std::bit_cast<std::uint32_t>(v), 4); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }
  void raw(const char* p, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      out_.push_back(static_cast<std::byte>(p[i]));
    }
  }

 private:
  void put(std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) {
      out_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xffU));
    }
  }
  std::vector<std::byte>& out_;
};

class Reader {
 public:
  explicit Reader(const std::vector<std::byte>& in) : in_(in) {}
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  float f32() { return std::bit_cast<float>(static_cast<std::uint32_t>(get(4))); }
  double f64() { return std::bit_cast<double>(get(8)); }
  std::size_t pos() const { return pos_; }
  void skip(std::size_t n) { pos_ += n; }

 private:
  std::uint64_t get(int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
      v |= static_cast<std::uint64_t>(std::to_integer<unsigned>(in_[pos_ + static_cast<std::size_t>(i)])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }
  const std::vector<std::byte>& in_;
  std::size_t pos_ = 0;
};

}  // namespace

Snapshot make_snapshot(const ParticleStore& p, double box_length, double a, const CosmologyParams& cosmo,
                       std::uint64_t seed, std::size_t stride) {
  if (stride == 0) {
    throw ContractError("make_snapshot: stride must be positive");
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.status[i] == Status::active && p.id[i] % stride == 0) {
      order.push_back(i);
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a_, std::size_t b_) { return p.id[a_] < p.id[b_]; });
  Snapshot s;
  s.box_length = box_length;
  s.a = a;
  s.cosmo = cosmo;
  s.seed = seed;
  for (std::size_t i : order) {
    s.x.push_back(static_cast<float>(p.x[i]));
    s.y.push_back(static_cast<float>(p.y[i]));
    s.z.push_back(static_cast<float>(p.z[i]));
    s.px.push_back(static_cast<float>(p.px[i]));
    s.py.push_back(static_cast<float>(p.py[i]));
    s.pz.push_back(static_cast<float>(p.pz[i]));
    s.id.push_back(p.id[i]);
  }
  return s;
}

std::vector<std::byte> encode_snapshot(const Snapshot& s) {
  const std::size_t n = s.size();
  for (const auto* v : {&s.x, &s.y, &s.z, &s.px, &s.py, &s.pz}) {
    if (v->size() != n) {
      throw ContractError("encode_snapshot: array lengths differ");
    }
  }
  std::vector<std::byte> out;
  out.reserve(s.file_bytes());
  Writer w(out);
  w.raw(kMagic, sizeof kMagic);
  w.u32(kSnapshotVersion);
  w.u32(0);
  w.u64(n);
  w.f64(s.box_length);
  w.f64(s.a);
  w.f64(s.cosmo.omega_m);
  w.f64(s.cosmo.omega_lambda);
  w.f64(s.cosmo.h);
  w.u64(s.seed);
  for (const auto* v : {&s.x, &s.y, &s.z, &s.px, &s.py, &s.pz}) {
    for (float f : *v) {
      w.f32(f);
    }
  }
  for (std::uint64_t id : s.id) {
    w.u64(id);
  }
  return out;
}

Snapshot decode_snapshot(const std::vector<std::byte>& bytes) {
  if (bytes.size() < kSnapshotHeaderBytes) {
    throw IoError("snapshot truncated: expected at least " + std::to_string(kSnapshotHeaderBytes) +
                  " header bytes, found " + std::to_string(bytes.size()));
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw IoError("not a snapshot: bad magic");
  }
  Reader r(bytes);
  r.skip(sizeof kMagic);
  const std::uint32_t version = r.u32();
  if (version != kSnapshotVersion) {
    throw IoError("snapshot version " + std::to_string(version) + " is not supported (expected " +
                  std::to_string(kSnapshotVersion) + ")");
  }
  r.u32();
  const std::uint64_t n = r.u64();
  Snapshot s;
  s.box_length = r.f64();
  s.a = r.f64();
  s.cosmo.omega_m = r.f64();
  s.cosmo.omega_lambda = r.f64();
  s.cosmo.h = r.f64();
  s.seed = r.u64();

  const std::uint64_t per_particle = 6 * 4 + 8;
  if (n > (bytes.size() - kSnapshotHeaderBytes) / per_particle) {
    throw IoError("snapshot truncated: expected " + std::to_string(kSnapshotHeaderBytes + n * per_particle) +
                  " bytes, found " + std::to_string(bytes.size()));
  }
  const std::uint64_t expected = kSnapshotHeaderBytes + n * per_particle;
  if (bytes.size() != expected) {
    throw IoError(std::string(bytes.size() < expected ? "snapshot truncated" : "snapshot has trailing data") +
                  ": expected " + std::to_string(expected) + " bytes, found " + std::to_string(bytes.size()));
  }
  for (auto* v : {&s.x, &s.y, &s.z, &s.px, &s.py, &s.pz}) {
    v->resize(n);
    for (auto& f : *v) {
      f = r.f32();
    }
  }
  s.id.resize(n);
  for (auto& id : s.id) {
    id = r.u64();
  }
  return s;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  const auto bytes = encode_snapshot(snap);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open snapshot " + path.string());
  }
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> bytes(raw.size());
  std::memcpy(bytes.data(), raw.data(), raw.size());
  try {
    return decode_snapshot(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace hacc::cli
