#include "fdim/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "fdim/parallel.hpp"
#include "fdim/random.hpp"
#include "fdim/simulate.hpp"

namespace fractal {

namespace {

// fd is pulled into this band before deriving alpha = 4 - 2 fd.
constexpr double kLowestFd = 1.01;
constexpr double kHighestFd = 1.99;
constexpr std::size_t kFewReplicates = 20;

}  // namespace

double empirical_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error(ErrorCode::InvalidParameters, "quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidParameters, "quantile level must lie in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BootstrapResult bootstrap_ci(const Series& series, const BootstrapConfig& cfg) {
  if (cfg.replicates < 2) throw Error(ErrorCode::InvalidParameters, "bootstrap needs at least 2 replicates");
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw Error(ErrorCode::InvalidParameters, "level must lie in (0, 1)");

  BootstrapResult result;
  result.point = run_method(series, cfg.method);
  result.level = cfg.level;
  result.replicates = cfg.replicates;
  if (cfg.replicates < kFewReplicates) {
    result.warnings.push_back("fewer than 20 bootstrap replicates; quantiles are unreliable");
  }

  double fd = result.point.fd;
  if (!std::isfinite(fd)) throw Error(ErrorCode::EstimateOutOfRange, "point estimate is not finite");
  if (fd <= 1.0 || fd >= 2.0) {
    const double clamped = std::clamp(fd, kLowestFd, kHighestFd);
    std::ostringstream msg;
    msg.precision(17);
    msg << "point estimate " << fd << " clamped to " << clamped << " to derive the bootstrap model";
    result.warnings.push_back(msg.str());
    fd = clamped;
  }
  CovarianceModel model;
  model.family = Family::PoweredExponential;
  model.alpha = 4.0 - 2.0 * fd;
  model.c = std::pow(result.point.scale, 1.0 / model.alpha);
  model.variance = 1.0;
  if (!std::isfinite(model.c) || !(model.c > 0.0)) {
    throw Error(ErrorCode::EstimateOutOfRange, "fitted scale gives no valid bootstrap range parameter");
  }
  result.alpha = model.alpha;
  result.range = model.c;

  const Simulator1d simulator(model, series.n());
  std::vector<std::optional<double>> draws(cfg.replicates);
  parallel_for(cfg.replicates, cfg.threads, [&](std::size_t b) {
    try {
      const Series path = simulator.draw(derive_seed(cfg.seed, {b}));
      draws[b] = run_method(path, cfg.method).fd;
    } catch (const Error&) {
      draws[b].reset();
    }
  });
  for (const auto& d : draws) {
    if (d) {
      result.boot_estimates.push_back(*d);
    } else {
      ++result.failures;
    }
  }
  if (result.failures > 0) {
    result.warnings.push_back(std::to_string(result.failures) + " bootstrap replicates failed and were excluded");
  }
  if (result.boot_estimates.empty()) throw Error(ErrorCode::DegenerateSeries, "every bootstrap replicate failed");

  std::vector<double> sorted = result.boot_estimates;
  std::sort(sorted.begin(), sorted.end());
  const double tail = (1.0 - cfg.level) / 2.0;
  result.lower = empirical_quantile(sorted, tail);
  result.upper = empirical_quantile(sorted, 1.0 - tail);
  return result;
}

}  // namespace fractal
