#include "hacc/fft/pencil_fft.hpp"

#include <algorithm>
#include <cmath>

#include "hacc/errors.hpp"

namespace hacc::fft {

namespace {

std::size_t row_major(const Dims& d, const Index3& g) {
  return (static_cast<std::size_t>(g[0]) * static_cast<std::size_t>(d[1]) + static_cast<std::size_t>(g[1])) *
             static_cast<std::size_t>(d[2]) +
         static_cast<std::size_t>(g[2]);
}

// Visit the points of `box` in canonical (x, y, z) order.
template <class F>
void for_each_point(const IndexBox& box, F&& f) {
  for (int i = box.ext[0].begin; i < box.ext[0].end; ++i) {
    for (int j = box.ext[1].begin; j < box.ext[1].end; ++j) {
      for (int k = box.ext[2].begin; k < box.ext[2].end; ++k) {
        f(Index3{i, j, k});
      }
    }
  }
}

}  // namespace

PencilFft::PencilFft(Dims dims, RankGrid grid, Engine engine)
    : dims_(dims),
      grid_(grid),
      engine_(engine),
      z_pencils_(dims, grid, 2),
      y_pencils_(dims, grid, 1),
      x_pencils_(dims, grid, 0),
      comm_(std::make_unique<Communicator>(grid.size())) {}

DistributedField PencilFft::scatter(std::span<const double> global) const {
  if (global.size() != z_pencils_.global_volume()) {
    throw ContractError("PencilFft::scatter: global array size does not match the grid");
  }
  DistributedField field(z_pencils_);
  for (int r = 0; r < z_pencils_.n_ranks(); ++r) {
    auto& block = field.blocks[static_cast<std::size_t>(r)];
    for (std::size_t off = 0; off < block.size(); ++off) {
      block[off] = Complex(global[row_major(dims_, z_pencils_.global_index(r, off))], 0.0);
    }
  }
  return field;
}

DistributedField PencilFft::scatter(std::span<const Complex> global, const PencilLayout& layout) const {
  if (global.size() != layout.global_volume() || layout.dims() != dims_) {
    throw ContractError("PencilFft::scatter: global array does not match the layout");
  }
  DistributedField field(layout);
  for (int r = 0; r < layout.n_ranks(); ++r) {
    auto& block = field.blocks[static_cast<std::size_t>(r)];
    for (std::size_t off = 0; off < block.size(); ++off) {
      block[off] = global[row_major(dims_, layout.global_index(r, off))];
    }
  }
  return field;
}

std::vector<Complex> PencilFft::gather(const DistributedField& field) const {
  std::vector<Complex> out(field.layout.global_volume());
  for (int r = 0; r < field.layout.n_ranks(); ++r) {
    const auto& block = field.blocks[static_cast<std::size_t>(r)];
    for (std::size_t off = 0; off < block.size(); ++off) {
      out[row_major(dims_, field.layout.global_index(r, off))] = block[off];
    }
  }
  return out;
}

std::vector<double> PencilFft::gather_real(const DistributedField& field) const {
  std::vector<double> out(field.layout.global_volume());
  for (int r = 0; r < field.layout.n_ranks(); ++r) {
    const auto& block = field.blocks[static_cast<std::size_t>(r)];
    for (std::size_t off = 0; off < block.size(); ++off) {
      out[row_major(dims_, field.layout.global_index(r, off))] = block[off].real();
    }
  }
  return out;
}

DistributedField PencilFft::transpose(const DistributedField& field, const PencilLayout& to) {
  const PencilLayout& from = field.layout;
  if (from.dims() != to.dims() || !(from.rank_grid() == to.rank_grid())) {
    throw ContractError("PencilFft::transpose: layouts cover different grids");
  }
  const int n_ranks = from.n_ranks();
  DistributedField out(to);
  comm_->begin_phase();

  // Phase 1: every rank packs and posts the intersection of its block with
  // each destination block. Self-overlap is copied directly.
#pragma omp parallel for schedule(static)
  for (int src = 0; src < n_ranks; ++src) {
    const IndexBox mine = from.owned(src);
    const auto& in = field.blocks[static_cast<std::size_t>(src)];
    for (int dst = 0; dst < n_ranks; ++dst) {
      const IndexBox overlap = intersect(mine, to.owned(dst));
      if (overlap.empty()) {
        continue;
      }
      if (dst == src) {
        auto& target = out.blocks[static_cast<std::size_t>(dst)];
        for_each_point(overlap, [&](const Index3& g) { target[to.local_index(dst, g)] = in[from.local_index(src, g)]; });
        continue;
      }
      std::vector<Complex> packed;
      packed.reserve(overlap.volume());
      for_each_point(overlap, [&](const Index3& g) { packed.push_back(in[from.local_index(src, g)]); });
      comm_->send_values<Complex>(src, dst, packed);
    }
  }

  // Phase 2: every rank drains its inbox in source order.
  bool size_mismatch = false;
#pragma omp parallel for schedule(static) reduction(|| : size_mismatch)
  for (int dst = 0; dst < n_ranks; ++dst) {
    const IndexBox mine = to.owned(dst);
    auto& target = out.blocks[static_cast<std::size_t>(dst)];
    for (int src = 0; src < n_ranks; ++src) {
      if (src == dst) {
        continue;
      }
      const IndexBox overlap = intersect(from.owned(src), mine);
      if (overlap.empty()) {
        continue;
      }
      const auto packed = comm_->receive_values<Complex>(dst, src);
      if (packed.size() != overlap.volume()) {
        size_mismatch = true;
        continue;
      }
      std::size_t pos = 0;
      for_each_point(overlap, [&](const Index3& g) { target[to.local_index(dst, g)] = packed[pos++]; });
    }
  }
  if (size_mismatch) {
    throw ContractError("PencilFft::transpose: message size mismatch");
  }
  last_peers_.push_back(comm_->max_phase_peers());
  return out;
}

void PencilFft::transform_local(DistributedField& field, Direction dir) const {
  const int n = dims_[field.layout.pencil_axis()];
  const int n_ranks = field.layout.n_ranks();
#pragma omp parallel for schedule(static)
  for (int r = 0; r < n_ranks; ++r) {
    transform_lines(field.blocks[static_cast<std::size_t>(r)], n, dir, engine_);
  }
}

DistributedField PencilFft::forward(const DistributedField& real) {
  if (!(real.layout == z_pencils_)) {
    throw ContractError("PencilFft::forward: input is not on the real-space layout");
  }
  for (const auto& block : real.blocks) {
    for (const auto& v : block) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw ContractError("PencilFft::forward: input holds non-finite values");
      }
    }
  }
  ++transforms_;
  last_peers_.clear();
  DistributedField work = real;
  transform_local(work, Direction::forward);
  work = transpose(work, y_pencils_);
  transform_local(work, Direction::forward);
  work = transpose(work, x_pencils_);
  transform_local(work, Direction::forward);
  return work;
}

DistributedField PencilFft::inverse(const DistributedField& spectrum) {
  if (!(spectrum.layout == x_pencils_)) {
    throw ContractError("PencilFft::inverse: input is not on the spectral layout");
  }
  ++transforms_;
  last_peers_.clear();
  DistributedField work = spectrum;
  transform_local(work, Direction::inverse);
  work = transpose(work, y_pencils_);
  transform_local(work, Direction::inverse);
  work = transpose(work, z_pencils_);
  transform_local(work, Direction::inverse);

  // A Hermitian spectrum has a real inverse; anything else is a contract violation.
  double max_abs = 0.0;
  double max_imag = 0.0;
  for (const auto& block : work.blocks) {
    for (const auto& v : block) {
      max_abs = std::max(max_abs, std::abs(v));
      max_imag = std::max(max_imag, std::abs(v.imag()));
    }
  }
  if (max_imag > 1e-9 * max_abs + 1e-300) {
    throw ContractError("PencilFft::inverse: spectrum is not Hermitian (imaginary residue " +
                        std::to_string(max_imag / max_abs) + " relative)");
  }
  return work;
}

}  // namespace hacc::fft
