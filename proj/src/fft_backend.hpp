#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace gevrey::detail {

enum class FftDirection { Forward, Backward };

/// Unnormalized in-place multidimensional DFT of an n^d row-major array.
/// Forward uses e^{−2πi jk/n}. Safe to call concurrently.
void fft_inplace(std::span<std::complex<double>> data, int dim, std::size_t n,
                 FftDirection direction);

}  // namespace gevrey::detail
