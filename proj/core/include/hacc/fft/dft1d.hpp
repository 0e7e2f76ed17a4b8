#pragma once

#include <complex>
#include <span>

namespace hacc::fft {

enum class Engine { fftw, naive };

// Sign convention: forward uses exp(-2 pi i jk/n), inverse exp(+2 pi i jk/n);
// neither direction normalises.
enum class Direction { forward = -1, inverse = +1 };

// O(n^2) direct DFT of one line, out-of-place.
void dft_naive(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, Direction dir);

// In-place transform of `count` contiguous lines of length n.
void transform_lines(std::span<std::complex<double>> data, int n, Direction dir, Engine engine);

}  // namespace hacc::fft
