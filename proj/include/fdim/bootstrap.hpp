#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fdim/core.hpp"
#include "fdim/methods.hpp"

namespace fractal {

struct BootstrapConfig {
  MethodSpec method;
  std::size_t replicates = 200;
  double level = 0.90;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

struct BootstrapResult {
  Estimate point;
  double level = 0.90;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t replicates = 0;
  /// Resampled fd values in replicate order; failed replicates are left out.
  std::vector<double> boot_estimates;
  std::size_t failures = 0;
  /// Parameters of the powered exponential model the replicates were drawn from.
  double alpha = 0.0;
  double range = 0.0;
  std::vector<std::string> warnings;
};

/// Linear interpolation between order statistics of sorted data at h = (N - 1) q.
double empirical_quantile(std::span<const double> sorted, double q);

/// Parametric bootstrap: fit (fd, scale), set alpha = 4 - 2 fd, draw B unit
/// variance powered exponential paths with range c = scale^(1/alpha) on the
/// same grid, re-estimate each, and report the central empirical interval.
BootstrapResult bootstrap_ci(const Series& series, const BootstrapConfig& cfg);

}  // namespace fractal
