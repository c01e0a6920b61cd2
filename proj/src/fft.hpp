#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin FFTW wrappers. Plans are built with FFTW_ESTIMATE so the same input
// always produces the same bits regardless of which thread runs it.
namespace fractal::detail {

using Complex = std::complex<double>;

/// Unnormalized forward DFT, sum_j x_j exp(-2 pi i jk / N).
std::vector<Complex> fft(std::vector<Complex> data);

/// Unnormalized 2D forward DFT of a row-major rows x cols array.
std::vector<Complex> fft2(std::vector<Complex> data, std::size_t rows, std::size_t cols);

/// FFTW REDFT10: y_k = 2 sum_j x_j cos(pi (2j + 1) k / (2N)).
std::vector<double> dct2(std::span<const double> data);

}  // namespace fractal::detail
