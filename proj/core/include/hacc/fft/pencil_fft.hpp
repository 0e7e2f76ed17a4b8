#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hacc/comm.hpp"
#include "hacc/fft/dft1d.hpp"
#include "hacc/fft/pencil_layout.hpp"

namespace hacc::fft {

// Distributed 3-D complex FFT over a 2-D pencil decomposition.
//
// Real-space data lives in z-pencils, spectra in x-pencils. A forward
// transform runs z-lines, transposes within each rank-grid row to y-pencils,
// runs y-lines, transposes within each rank-grid column to x-pencils and runs
// x-lines. The inverse retraces the same path. Transforms are unnormalised.
//
// Global arrays are row-major with x slowest: index (ix*ny + iy)*nz + iz.
class PencilFft {
 public:
  PencilFft(Dims dims, RankGrid grid, Engine engine = Engine::fftw);

  [[nodiscard]] const PencilLayout& real_layout() const { return z_pencils_; }
  [[nodiscard]] const PencilLayout& mid_layout() const { return y_pencils_; }
  [[nodiscard]] const PencilLayout& spectral_layout() const { return x_pencils_; }
  [[nodiscard]] const Dims& dims() const { return dims_; }

  [[nodiscard]] DistributedField scatter(std::span<const double> global) const;
  [[nodiscard]] DistributedField scatter(std::span<const Complex> global, const PencilLayout& layout) const;
  [[nodiscard]] std::vector<Complex> gather(const DistributedField& field) const;
  [[nodiscard]] std::vector<double> gather_real(const DistributedField& field) const;

  // Throws ContractError if `real` is not on real_layout() or holds non-finite values.
  [[nodiscard]] DistributedField forward(const DistributedField& real);
  // Throws ContractError if the spectrum is not Hermitian (the result would not be real).
  [[nodiscard]] DistributedField inverse(const DistributedField& spectrum);

  // Redistribute between two layouts over the same dims and rank grid.
  [[nodiscard]] DistributedField transpose(const DistributedField& field, const PencilLayout& to);

  [[nodiscard]] Communicator& comm() { return *comm_; }
  // Number of forward + inverse invocations since construction.
  [[nodiscard]] std::size_t transform_count() const { return transforms_; }
  // Max peers per rank for each transpose of the most recent forward/inverse.
  [[nodiscard]] const std::vector<int>& last_transpose_peers() const { return last_peers_; }

 private:
  void transform_local(DistributedField& field, Direction dir) const;

  Dims dims_;
  RankGrid grid_;
  Engine engine_;
  PencilLayout z_pencils_;
  PencilLayout y_pencils_;
  PencilLayout x_pencils_;
  std::unique_ptr<Communicator> comm_;
  std::size_t transforms_ = 0;
  std::vector<int> last_peers_;
};

}  // namespace hacc::fft
