#include "fdim/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdim/random.hpp"
#include "fft.hpp"

namespace fractal {

namespace {

using detail::Complex;

// Negative eigenvalues down to this fraction of the largest are rounding
// noise and get clipped to zero.
constexpr double kClipTolerance = 1e-10;
// Largest 1D embedding relative to n, and largest 2D embedding in cells.
constexpr std::size_t kMaxGrowth1d = std::size_t{1} << 14;
constexpr std::size_t kMaxCells2d = std::size_t{1} << 24;

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

// Real parts of the transform of a real symmetric vector, plus the clipping
// verdict. Returns false when the spectrum has materially negative values.
bool spectrum(std::vector<Complex> transformed, std::vector<double>& eigen, std::size_t& clipped) {
  eigen.resize(transformed.size());
  double top = 0.0;
  for (std::size_t k = 0; k < transformed.size(); ++k) {
    eigen[k] = transformed[k].real();
    top = std::max(top, eigen[k]);
  }
  clipped = 0;
  for (double& v : eigen) {
    if (v < 0.0) {
      if (v < -kClipTolerance * top) return false;
      v = 0.0;
      ++clipped;
    }
  }
  return top > 0.0;
}

std::string clip_warning(std::size_t clipped) {
  std::ostringstream msg;
  msg << clipped << " slightly negative embedding eigenvalues clipped to zero";
  return msg.str();
}

// sqrt(lambda / M) * (Z1 + i Z2), transformed; real parts carry the target covariance.
std::vector<Complex> gaussian_draw(const std::vector<double>& eigen, std::uint64_t seed,
                                   std::size_t rows, std::size_t cols) {
  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double size = static_cast<double>(eigen.size());
  std::vector<Complex> z(eigen.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double amp = std::sqrt(eigen[k] / size);
    const double re = normal(rng);
    const double im = normal(rng);
    z[k] = Complex(amp * re, amp * im);
  }
  return rows == 0 ? detail::fft(std::move(z)) : detail::fft2(std::move(z), rows, cols);
}

}  // namespace

Simulator1d::Simulator1d(const CovarianceModel& model, std::size_t n) : model_(model), n_(n) {
  model_.validate();
  if (n < 2) throw Error(ErrorCode::InvalidParameters, "simulation needs n >= 2");
  const double nd = static_cast<double>(n);
  auto target = [&](std::size_t lag) {
    const double t = static_cast<double>(lag) / nd;
    if (model_.stationary()) return covariance(model_, t);
    // Covariance of unit-step increments of a process with variogram gamma_2.
    const double up = variogram2(model_, static_cast<double>(lag + 1) / nd);
    const double down = lag == 0 ? up : variogram2(model_, static_cast<double>(lag - 1) / nd);
    return up + down - 2.0 * variogram2(model_, t);
  };

  for (std::size_t size = next_pow2(2 * n); size <= kMaxGrowth1d * n; size *= 2) {
    std::vector<Complex> row(size);
    first_row_.assign(size, 0.0);
    for (std::size_t k = 0; k < size; ++k) {
      first_row_[k] = target(std::min(k, size - k));
      row[k] = first_row_[k];
    }
    std::size_t clipped = 0;
    if (spectrum(detail::fft(std::move(row)), eigenvalues_, clipped)) {
      if (clipped > 0) warnings_.push_back(clip_warning(clipped));
      return;
    }
  }
  throw Error(ErrorCode::EmbeddingFailure, "no non-negative definite circulant embedding within the size cap");
}

Series Simulator1d::draw(std::uint64_t seed) const {
  const auto y = gaussian_draw(eigenvalues_, seed, 0, 0);
  std::vector<double> out(n_ + 1);
  if (model_.stationary()) {
    for (std::size_t i = 0; i <= n_; ++i) out[i] = y[i].real();
  } else {
    out[0] = 0.0;
    for (std::size_t i = 1; i <= n_; ++i) out[i] = out[i - 1] + y[i - 1].real();
  }
  return Series(std::move(out));
}

Simulator2d::Simulator2d(const CovarianceModel& model, std::size_t n1, std::size_t n2) : n1_(n1), n2_(n2) {
  model.validate();
  if (!model.stationary()) throw Error(ErrorCode::InvalidParameters, "2D simulation supports stationary families only");
  if (n1 < 1 || n2 < 1) throw Error(ErrorCode::InvalidParameters, "2D simulation needs n1, n2 >= 1");
  const double d1 = static_cast<double>(n1);
  const double d2 = static_cast<double>(n2);
  std::size_t rows = next_pow2(2 * n1);
  std::size_t cols = next_pow2(2 * n2);
  for (; rows * cols <= kMaxCells2d; rows *= 2, cols *= 2) {
    base_.assign(rows * cols, 0.0);
    std::vector<Complex> block(rows * cols);
    for (std::size_t k1 = 0; k1 < rows; ++k1) {
      const double t1 = static_cast<double>(std::min(k1, rows - k1)) / d1;
      for (std::size_t k2 = 0; k2 < cols; ++k2) {
        const double t2 = static_cast<double>(std::min(k2, cols - k2)) / d2;
        const double v = covariance(model, std::hypot(t1, t2));
        base_[k1 * cols + k2] = v;
        block[k1 * cols + k2] = v;
      }
    }
    std::size_t clipped = 0;
    if (spectrum(detail::fft2(std::move(block), rows, cols), eigenvalues_, clipped)) {
      rows_ = rows;
      cols_ = cols;
      if (clipped > 0) warnings_.push_back(clip_warning(clipped));
      return;
    }
  }
  throw Error(ErrorCode::EmbeddingFailure, "no non-negative definite block-circulant embedding within the size cap");
}

Grid Simulator2d::draw(std::uint64_t seed) const {
  const auto y = gaussian_draw(eigenvalues_, seed, rows_, cols_);
  std::vector<double> out((n1_ + 1) * (n2_ + 1));
  for (std::size_t i1 = 0; i1 <= n1_; ++i1)
    for (std::size_t i2 = 0; i2 <= n2_; ++i2) out[i1 * (n2_ + 1) + i2] = y[i1 * cols_ + i2].real();
  return Grid(n1_ + 1, n2_ + 1, std::move(out));
}

Series simulate_1d(const CovarianceModel& model, std::size_t n, std::uint64_t seed) {
  return Simulator1d(model, n).draw(seed);
}

Grid simulate_2d(const CovarianceModel& model, std::size_t n1, std::size_t n2, std::uint64_t seed) {
  return Simulator2d(model, n1, n2).draw(seed);
}

namespace {

void perturb(std::vector<double>& values, const ContaminationSpec& spec, std::uint64_t seed) {
  if (!(spec.sd > 0.0) || !std::isfinite(spec.sd)) {
    throw Error(ErrorCode::InvalidParameters, "outlier standard deviation must be positive");
  }
  if (spec.count > values.size()) {
    throw Error(ErrorCode::InvalidParameters, "more outliers than samples");
  }
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> position(0, values.size() - 1);
  std::normal_distribution<double> shift(0.0, spec.sd);
  for (std::size_t c = 0; c < spec.count; ++c) {
    const std::size_t i = position(rng);
    values[i] += shift(rng);
  }
}

}  // namespace

Series contaminate(const Series& series, const ContaminationSpec& spec, std::uint64_t seed) {
  std::vector<double> values(series.values().begin(), series.values().end());
  perturb(values, spec, seed);
  return Series(std::move(values));
}

Grid contaminate(const Grid& grid, const ContaminationSpec& spec, std::uint64_t seed) {
  std::vector<double> values(grid.values().begin(), grid.values().end());
  perturb(values, spec, seed);
  return Grid(grid.rows(), grid.cols(), std::move(values));
}

}  // namespace fractal
