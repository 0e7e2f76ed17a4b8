#include "hacc/particles.hpp"

#include <algorithm>

namespace hacc {

void ParticleStore::reserve(std::size_t n) {
  for (auto* v : {&x, &y, &z, &px, &py, &pz, &mass}) {
    v->reserve(n);
  }
  id.reserve(n);
  status.reserve(n);
}

void ParticleStore::resize(std::size_t n) {
  for (auto* v : {&x, &y, &z, &px, &py, &pz, &mass}) {
    v->resize(n, 0.0);
  }
  id.resize(n, 0);
  status.resize(n, Status::active);
}

void ParticleStore::clear() { resize(0); }

void ParticleStore::push_back(const ParticleRecord& p) {
  x.push_back(p.x);
  y.push_back(p.y);
  z.push_back(p.z);
  px.push_back(p.px);
  py.push_back(p.py);
  pz.push_back(p.pz);
  mass.push_back(p.mass);
  id.push_back(p.id);
  status.push_back(p.status);
}

ParticleRecord ParticleStore::record(std::size_t i) const {
  return ParticleRecord{x[i], y[i], z[i], px[i], py[i], pz[i], mass[i], id[i], status[i]};
}

void ParticleStore::set(std::size_t i, const ParticleRecord& p) {
  x[i] = p.x;
  y[i] = p.y;
  z[i] = p.z;
  px[i] = p.px;
  py[i] = p.py;
  pz[i] = p.pz;
  mass[i] = p.mass;
  id[i] = p.id;
  status[i] = p.status;
}

std::size_t ParticleStore::count(Status s) const {
  return static_cast<std::size_t>(std::count(status.begin(), status.end(), s));
}

}  // namespace hacc
