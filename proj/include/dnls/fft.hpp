#pragma once

#include <span>

#include "dnls/lattice.hpp"

namespace dnls {

enum class FftDirection { forward, backward };

/// Unnormalized in-place DFT of an N^d row-major array (native FFT order).
/// Plans are cached per (d, N, direction); safe to call from several threads.
void fft_inplace(std::span<Complex> data, int dim, int n, FftDirection direction);

}  // namespace dnls
