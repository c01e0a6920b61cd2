#pragma once

#include <cstddef>

#include "fdim/core.hpp"

namespace fractal {

/// Power-variation estimator settings. p = 2 variogram, p = 1 madogram,
/// p = 1/2 rodogram. Lags 1..lags enter the regression; values above 2 are
/// accepted but increase bias.
struct VariationConfig {
  double p = 1.0;
  std::size_t lags = 2;
  int diff_order = 1;
};

/// (1 / (2(n - l))) * sum_{i=l..n} |X_i - X_{i-l}|^p
double power_variation(const Series& series, double p, std::size_t lag);

/// (1 / (2(n - 2l))) * sum_{i=l..n-l} |X_{i+l} - 2 X_i + X_{i-l}|^p
double power_variation_second_diff(const Series& series, double p, std::size_t lag);

/// fd = 2 - slope / p of log V_p(l/n) on log(l/n), l = 1..lags.
Estimate variation_estimate(const Series& series, const VariationConfig& cfg);

/// Hall-Wood area statistic shifted by `offset` grid steps:
/// (l/n) * sum_{i=1..floor((n-j)/l)} |X_{il+j} - X_{il+j-l}|.
double hallwood_area(const Series& series, std::size_t lag, std::size_t offset = 0);

/// fd = 2 - slope of log A(l/n) on log(l/n), l = 1..lags.
Estimate hallwood_estimate(const Series& series, std::size_t lags = 2);

/// Canonical tag for a variation estimator, e.g. "madogram" or "variation:p=1.5:diff=2".
std::string variation_method_name(double p, int diff_order);

}  // namespace fractal
