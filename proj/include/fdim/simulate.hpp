#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fdim/core.hpp"
#include "fdim/covariance.hpp"

namespace fractal {

/// Exact Gaussian simulation on {i/n : i = 0..n} by circulant embedding.
/// Stationary families embed the covariance directly; fBm embeds its
/// stationary increments (fractional Gaussian noise) and cumulates them, so
/// X_0 = 0. The embedding is built once; draws are pure functions of the seed.
class Simulator1d {
 public:
  Simulator1d(const CovarianceModel& model, std::size_t n);

  Series draw(std::uint64_t seed) const;

  std::size_t n() const noexcept { return n_; }
  std::size_t embedding_size() const noexcept { return first_row_.size(); }
  /// First row of the circulant matrix (covariance, or increment covariance for fBm).
  const std::vector<double>& first_row() const noexcept { return first_row_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  CovarianceModel model_;
  std::size_t n_;
  std::vector<double> first_row_;
  std::vector<double> eigenvalues_;
  std::vector<std::string> warnings_;
};

/// Exact stationary Gaussian field on {(i1/n1, i2/n2)} via block-circulant
/// embedding of the isotropic covariance.
class Simulator2d {
 public:
  Simulator2d(const CovarianceModel& model, std::size_t n1, std::size_t n2);

  Grid draw(std::uint64_t seed) const;

  std::size_t embedding_rows() const noexcept { return rows_; }
  std::size_t embedding_cols() const noexcept { return cols_; }
  /// Row-major base block of the embedding (rows x cols).
  const std::vector<double>& base() const noexcept { return base_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  std::size_t n1_;
  std::size_t n2_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> base_;
  std::vector<double> eigenvalues_;
  std::vector<std::string> warnings_;
};

Series simulate_1d(const CovarianceModel& model, std::size_t n, std::uint64_t seed);
Grid simulate_2d(const CovarianceModel& model, std::size_t n1, std::size_t n2, std::uint64_t seed);

/// Additive outliers: `count` independent draws of a uniform position (with
/// replacement), each adding a N(0, sd^2) value.
struct ContaminationSpec {
  std::size_t count = 0;
  double sd = 0.1;
};

Series contaminate(const Series& series, const ContaminationSpec& spec, std::uint64_t seed);
Grid contaminate(const Grid& grid, const ContaminationSpec& spec, std::uint64_t seed);

}  // namespace fractal
