#include "fdim/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fractal {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::DegenerateRegression: return "DegenerateRegression";
    case ErrorCode::LagOutOfRange: return "LagOutOfRange";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::InsufficientScales: return "InsufficientScales";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NoPairs: return "NoPairs";
    case ErrorCode::AllTransectsDegenerate: return "AllTransectsDegenerate";
    case ErrorCode::EmbeddingFailure: return "EmbeddingFailure";
    case ErrorCode::EstimateOutOfRange: return "EstimateOutOfRange";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream msg;
      msg << what << " value at index " << i << " is not finite";
      throw Error(ErrorCode::InvalidInput, msg.str());
    }
  }
}

}  // namespace

Series::Series(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::InvalidInput, "series needs at least 2 samples");
  }
  require_finite(values_, "series");
}

Series Series::slice(std::size_t first, std::size_t count) const {
  if (first + count > values_.size()) {
    throw Error(ErrorCode::InvalidParameters, "slice exceeds series length");
  }
  return Series(std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                    values_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ < 2 || cols_ < 2) {
    throw Error(ErrorCode::InvalidInput, "grid needs at least 2 rows and 2 columns");
  }
  if (values_.size() != rows_ * cols_) {
    throw Error(ErrorCode::InvalidInput, "grid value count does not match rows x cols");
  }
  require_finite(values_, "grid");
}

Series Grid::row(std::size_t i1) const {
  auto first = values_.begin() + static_cast<std::ptrdiff_t>(i1 * cols_);
  return Series(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(cols_)));
}

Series Grid::col(std::size_t i2) const {
  std::vector<double> out(rows_);
  for (std::size_t i1 = 0; i1 < rows_; ++i1) out[i1] = (*this)(i1, i2);
  return Series(std::move(out));
}

Grid Grid::transposed() const {
  std::vector<double> out(values_.size());
  for (std::size_t i1 = 0; i1 < rows_; ++i1)
    for (std::size_t i2 = 0; i2 < cols_; ++i2) out[i2 * rows_ + i1] = (*this)(i1, i2);
  return Grid(cols_, rows_, std::move(out));
}

FitResult loglog_fit(std::vector<LogLogPoint> points) {
  std::vector<double> weights(points.size(), 1.0);
  FitResult fit = weighted_loglog_fit(std::move(points), std::move(weights));
  fit.weights.clear();
  return fit;
}

FitResult weighted_loglog_fit(std::vector<LogLogPoint> points, std::vector<double> weights) {
  if (points.size() != weights.size()) {
    throw Error(ErrorCode::InvalidParameters, "weights and points differ in length");
  }
  if (points.size() < 2) {
    throw Error(ErrorCode::DegenerateRegression, "log-log fit needs at least 2 points");
  }
  double wsum = 0.0, ssum = 0.0, ysum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    if (!std::isfinite(pt.s) || !std::isfinite(pt.y)) {
      throw Error(ErrorCode::DegenerateRegression, "log-log point is not finite");
    }
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::InvalidParameters, "regression weights must be positive");
    }
    wsum += weights[i];
    ssum += weights[i] * pt.s;
    ysum += weights[i] * pt.y;
  }
  const double sbar = ssum / wsum;
  const double ybar = ysum / wsum;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double ds = points[i].s - sbar;
    sxx += weights[i] * ds * ds;
    sxy += weights[i] * ds * (points[i].y - ybar);
  }
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const auto& a, const auto& b) { return a.s < b.s; });
  if (lo->s == hi->s || !(sxx > 0.0)) {
    throw Error(ErrorCode::DegenerateRegression, "log-log fit needs at least 2 distinct scales");
  }
  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * sbar;
  fit.points = std::move(points);
  fit.weights = std::move(weights);
  return fit;
}

Estimate make_estimate(std::string method, double fd, FitResult fit, double lower, double upper) {
  Estimate est;
  est.fd = fd;
  est.scale = std::exp(fit.intercept);
  est.method = std::move(method);
  est.fit = std::move(fit);
  if (fd < lower || fd > upper) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "estimate " << fd << " lies outside [" << lower << ", " << upper << "]";
    est.warnings.push_back(msg.str());
  }
  return est;
}

}  // namespace fractal
