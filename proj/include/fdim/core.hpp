#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fractal {

enum class ErrorCode {
  InvalidInput,
  InvalidParameters,
  DegenerateRegression,
  LagOutOfRange,
  DegenerateSeries,
  DegenerateGrid,
  InsufficientScales,
  SeriesTooShort,
  NoPairs,
  AllTransectsDegenerate,
  EmbeddingFailure,
  EstimateOutOfRange,
  WindowTooLarge,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a stable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Equally spaced samples X_{i/n}, i = 0..n, of a path on [0, 1].
class Series {
 public:
  explicit Series(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  /// Grid divisor n; samples sit at i/n.
  std::size_t n() const noexcept { return values_.size() - 1; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  /// Samples [first, first + count) as a new series.
  Series slice(std::size_t first, std::size_t count) const;

 private:
  std::vector<double> values_;
};

/// Row-major lattice sample; entry (i1, i2) is the value at (i1/n1, i2/n2).
class Grid {
 public:
  Grid(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t n1() const noexcept { return rows_ - 1; }
  std::size_t n2() const noexcept { return cols_ - 1; }
  double operator()(std::size_t i1, std::size_t i2) const noexcept { return values_[i1 * cols_ + i2]; }
  std::span<const double> values() const noexcept { return values_; }

  Series row(std::size_t i1) const;
  Series col(std::size_t i2) const;
  Grid transposed() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

struct LogLogPoint {
  double s;  // log scale
  double y;  // log statistic
};

struct FitResult {
  double slope = 0.0;
  /// Fitted y at s = 0.
  double intercept = 0.0;
  std::vector<LogLogPoint> points;
  /// Regression weights; empty for ordinary least squares.
  std::vector<double> weights;
};

struct Estimate {
  double fd = 0.0;
  /// exp(intercept) of the log-log fit.
  double scale = 1.0;
  std::string method;
  std::optional<double> p;
  FitResult fit;
  /// Points that were computed for diagnostics but left out of the fit.
  std::vector<LogLogPoint> excluded;
  std::vector<std::string> warnings;
};

FitResult loglog_fit(std::vector<LogLogPoint> points);

/// Weighted least squares; weights must be positive.
FitResult weighted_loglog_fit(std::vector<LogLogPoint> points, std::vector<double> weights);

/// Builds an Estimate from a fit, adding an out-of-range warning when fd
/// leaves [lower, upper]. The value itself is never clamped.
Estimate make_estimate(std::string method, double fd, FitResult fit, double lower, double upper);

}  // namespace fractal
