#include "fdim/variation.hpp"

#include <cmath>
#include <sstream>

namespace fractal {

namespace {

// |d|^p with the common powers spelled out; std::pow is slow and the
// estimators spend most of their time here.
inline double abs_pow(double d, double p) {
  const double a = std::fabs(d);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 0.5) return std::sqrt(a);
  return std::pow(a, p);
}

void check_power(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::InvalidParameters, "power index p must be positive");
  }
}

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(15);
  out << v;
  return out.str();
}

}  // namespace

double power_variation(const Series& series, double p, std::size_t lag) {
  check_power(p);
  const std::size_t n = series.n();
  if (lag < 1 || lag >= n) {
    throw Error(ErrorCode::LagOutOfRange, "lag must satisfy 1 <= l < n");
  }
  const auto x = series.values();
  double sum = 0.0;
  for (std::size_t i = lag; i <= n; ++i) sum += abs_pow(x[i] - x[i - lag], p);
  return sum / (2.0 * static_cast<double>(n - lag));
}

double power_variation_second_diff(const Series& series, double p, std::size_t lag) {
  check_power(p);
  const std::size_t n = series.n();
  if (lag < 1 || 2 * lag >= n) {
    throw Error(ErrorCode::LagOutOfRange, "lag must satisfy 1 <= l and 2l < n");
  }
  const auto x = series.values();
  double sum = 0.0;
  for (std::size_t i = lag; i + lag <= n; ++i) sum += abs_pow(x[i + lag] - 2.0 * x[i] + x[i - lag], p);
  return sum / (2.0 * static_cast<double>(n - 2 * lag));
}

std::string variation_method_name(double p, int diff_order) {
  std::string name;
  if (p == 2.0) {
    name = "variogram";
  } else if (p == 1.0) {
    name = "madogram";
  } else if (p == 0.5) {
    name = "rodogram";
  } else {
    name = "variation:p=" + format_number(p);
  }
  if (diff_order == 2) name += ":diff=2";
  return name;
}

Estimate variation_estimate(const Series& series, const VariationConfig& cfg) {
  check_power(cfg.p);
  if (cfg.lags < 2) throw Error(ErrorCode::InvalidParameters, "at least 2 lags are required");
  if (cfg.diff_order != 1 && cfg.diff_order != 2) {
    throw Error(ErrorCode::InvalidParameters, "diff_order must be 1 or 2");
  }
  const std::size_t n = series.n();
  if (cfg.lags * static_cast<std::size_t>(cfg.diff_order) >= n) {
    throw Error(ErrorCode::LagOutOfRange, "series too short for the requested lags");
  }
  std::vector<LogLogPoint> points;
  points.reserve(cfg.lags);
  for (std::size_t l = 1; l <= cfg.lags; ++l) {
    const double v = cfg.diff_order == 1 ? power_variation(series, cfg.p, l)
                                         : power_variation_second_diff(series, cfg.p, l);
    if (!(v > 0.0)) {
      throw Error(ErrorCode::DegenerateSeries,
                  "power variation vanishes at lag " + std::to_string(l) + " (constant or periodic input)");
    }
    points.push_back({std::log(static_cast<double>(l) / static_cast<double>(n)), std::log(v)});
  }
  FitResult fit = loglog_fit(std::move(points));
  const double fd = 2.0 - fit.slope / cfg.p;
  Estimate est = make_estimate(variation_method_name(cfg.p, cfg.diff_order), fd, std::move(fit), 1.0, 2.0);
  est.p = cfg.p;
  return est;
}

double hallwood_area(const Series& series, std::size_t lag, std::size_t offset) {
  const std::size_t n = series.n();
  if (lag < 1 || 2 * lag > n) throw Error(ErrorCode::LagOutOfRange, "Hall-Wood lag must satisfy 1 <= l <= n/2");
  if (offset >= lag) throw Error(ErrorCode::LagOutOfRange, "Hall-Wood offset must satisfy 0 <= j < l");
  const auto x = series.values();
  double sum = 0.0;
  for (std::size_t idx = lag + offset; idx <= n; idx += lag) sum += std::fabs(x[idx] - x[idx - lag]);
  return static_cast<double>(lag) / static_cast<double>(n) * sum;
}

Estimate hallwood_estimate(const Series& series, std::size_t lags) {
  if (lags < 2) throw Error(ErrorCode::InvalidParameters, "at least 2 lags are required");
  const std::size_t n = series.n();
  if (n < 2 * lags) throw Error(ErrorCode::LagOutOfRange, "Hall-Wood estimator needs n >= 2L");
  std::vector<LogLogPoint> points;
  for (std::size_t l = 1; l <= lags; ++l) {
    const double a = hallwood_area(series, l);
    if (!(a > 0.0)) {
      throw Error(ErrorCode::DegenerateSeries, "Hall-Wood area vanishes at lag " + std::to_string(l));
    }
    points.push_back({std::log(static_cast<double>(l) / static_cast<double>(n)), std::log(a)});
  }
  FitResult fit = loglog_fit(std::move(points));
  const double fd = 2.0 - fit.slope;
  return make_estimate("hallwood", fd, std::move(fit), 1.0, 2.0);
}

}  // namespace fractal
