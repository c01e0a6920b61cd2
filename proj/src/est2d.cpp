#include "fdim/est2d.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fdim/variation.hpp"

namespace fractal {

namespace {

inline double abs_pow(double d, double p) {
  const double a = std::fabs(d);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 0.5) return std::sqrt(a);
  return std::pow(a, p);
}

void check_power(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidParameters, "power index p must be positive");
}

std::size_t pairs_for(const Grid& grid, const LatticeOffset& o) {
  const auto a = static_cast<std::size_t>(std::labs(o.d1));
  const auto b = static_cast<std::size_t>(std::labs(o.d2));
  if (a >= grid.rows() || b >= grid.cols()) return 0;
  return (grid.rows() - a) * (grid.cols() - b);
}

// Visits every unordered pair (i, j) with j = i + offset for each offset of k
// and averages f(i1, i2, j1, j2)^p with the 1 / (2 N(k)) normalization.
template <typename Increment>
double lattice_variation(const Grid& grid, double p, LatticeDistance k, Increment&& increment) {
  check_power(p);
  const auto offsets = lattice_offsets(k);
  std::size_t count = 0;
  double sum = 0.0;
  for (const auto& o : offsets) {
    const std::size_t r0 = o.d1 < 0 ? static_cast<std::size_t>(-o.d1) : 0;
    const std::size_t c0 = o.d2 < 0 ? static_cast<std::size_t>(-o.d2) : 0;
    if (pairs_for(grid, o) == 0) continue;
    const std::size_t r1 = grid.rows() - (o.d1 > 0 ? static_cast<std::size_t>(o.d1) : 0);
    const std::size_t c1 = grid.cols() - (o.d2 > 0 ? static_cast<std::size_t>(o.d2) : 0);
    for (std::size_t i1 = r0; i1 < r1; ++i1) {
      const auto j1 = static_cast<std::size_t>(static_cast<long>(i1) + o.d1);
      for (std::size_t i2 = c0; i2 < c1; ++i2) {
        const auto j2 = static_cast<std::size_t>(static_cast<long>(i2) + o.d2);
        sum += abs_pow(increment(i1, i2, j1, j2), p);
      }
    }
    count += (r1 - r0) * (c1 - c0);
  }
  if (count <= 1) throw Error(ErrorCode::NoPairs, "distance is realized by fewer than 2 point pairs");
  return sum / (2.0 * static_cast<double>(count));
}

Estimate lattice_estimate(const Grid& grid, double p, std::initializer_list<long> squared_distances,
                          const char* method, double (*variation)(const Grid&, double, LatticeDistance)) {
  check_power(p);
  const double n = static_cast<double>(std::max(grid.n1(), grid.n2()));
  std::vector<LogLogPoint> points;
  for (long k2 : squared_distances) {
    const auto k = LatticeDistance::from_squared(k2);
    const double v = variation(grid, p, k);
    if (!(v > 0.0)) {
      throw Error(ErrorCode::DegenerateGrid,
                  std::string(method) + " variation vanishes at k^2 = " + std::to_string(k2));
    }
    points.push_back({std::log(k.value() / n), std::log(v)});
  }
  FitResult fit = loglog_fit(std::move(points));
  const double fd = 3.0 - fit.slope / p;
  Estimate est = make_estimate(method, fd, std::move(fit), 2.0, 3.0);
  est.p = p;
  return est;
}

}  // namespace

LatticeDistance LatticeDistance::from_squared(long squared) {
  if (squared <= 0) throw Error(ErrorCode::InvalidParameters, "lattice distance must be positive");
  return LatticeDistance(squared);
}

LatticeDistance LatticeDistance::from_value(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidParameters, "lattice distance must be positive");
  const double sq = k * k;
  const double rounded = std::round(sq);
  if (std::fabs(sq - rounded) > 1e-9 * std::max(1.0, sq)) {
    throw Error(ErrorCode::InvalidParameters, "distance is not realizable on the integer lattice");
  }
  return LatticeDistance(static_cast<long>(rounded));
}

double LatticeDistance::value() const { return std::sqrt(static_cast<double>(squared_)); }

std::vector<LatticeOffset> lattice_offsets(LatticeDistance k) {
  std::vector<LatticeOffset> out;
  const long k2 = k.squared();
  for (long a = 0; a * a <= k2; ++a) {
    const long rest = k2 - a * a;
    const auto b = static_cast<long>(std::llround(std::sqrt(static_cast<double>(rest))));
    if (b * b != rest) continue;
    // Canonical member of each {o, -o}: first nonzero component positive.
    if (a == 0) {
      out.push_back({0, b});
    } else if (b == 0) {
      out.push_back({a, 0});
    } else {
      out.push_back({a, b});
      out.push_back({a, -b});
    }
  }
  return out;
}

std::size_t pair_count(const Grid& grid, LatticeDistance k) {
  std::size_t total = 0;
  for (const auto& o : lattice_offsets(k)) total += pairs_for(grid, o);
  return total;
}

double isotropic_variation(const Grid& grid, double p, LatticeDistance k) {
  return lattice_variation(grid, p, k, [&](std::size_t i1, std::size_t i2, std::size_t j1, std::size_t j2) {
    return grid(i1, i2) - grid(j1, j2);
  });
}

double filter_variation(const Grid& grid, double p, LatticeDistance k) {
  for (const auto& o : lattice_offsets(k)) {
    if (o.d1 % 2 != 0 || o.d2 % 2 != 0) {
      throw Error(ErrorCode::InvalidParameters, "filter variation needs offsets with even components");
    }
  }
  return lattice_variation(grid, p, k, [&](std::size_t i1, std::size_t i2, std::size_t j1, std::size_t j2) {
    return grid(i1, i2) - 2.0 * grid((i1 + j1) / 2, (i2 + j2) / 2) + grid(j1, j2);
  });
}

double square_increment_variation(const Grid& grid, double p, LatticeDistance k) {
  return lattice_variation(grid, p, k, [&](std::size_t i1, std::size_t i2, std::size_t j1, std::size_t j2) {
    return grid(i1, i2) - grid(i1, j2) - grid(j1, i2) + grid(j1, j2);
  });
}

Estimate isotropic_estimate(const Grid& grid, double p) {
  return lattice_estimate(grid, p, {1, 2, 4}, "isotropic", isotropic_variation);
}

Estimate filter_estimate(const Grid& grid, double p) {
  return lattice_estimate(grid, p, {4, 8, 16}, "filter", filter_variation);
}

Estimate square_increment_estimate(const Grid& grid, double p) {
  return lattice_estimate(grid, p, {2, 8}, "squareincr", square_increment_variation);
}

Estimate transect_estimate(const Grid& grid, const TransectConfig& cfg) {
  if (cfg.diff_order != 1 && cfg.diff_order != 2) {
    throw Error(ErrorCode::InvalidParameters, "diff_order must be 1 or 2");
  }
  if (cfg.min_valid_transects < 1) throw Error(ErrorCode::InvalidParameters, "min_valid_transects must be >= 1");
  const VariationConfig vc{cfg.p, 2, cfg.diff_order};

  std::vector<Estimate> estimates;
  std::size_t skipped = 0;
  auto attempt = [&](const Series& transect) {
    try {
      estimates.push_back(variation_estimate(transect, vc));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidParameters) throw;
      ++skipped;
    }
  };
  for (std::size_t i = 0; i < grid.rows(); ++i) attempt(grid.row(i));
  for (std::size_t j = 0; j < grid.cols(); ++j) attempt(grid.col(j));

  if (estimates.size() < cfg.min_valid_transects || estimates.empty()) {
    throw Error(ErrorCode::AllTransectsDegenerate,
                std::to_string(estimates.size()) + " valid transects, fewer than required");
  }

  std::vector<std::size_t> order(estimates.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return estimates[a].fd < estimates[b].fd; });
  const std::size_t count = order.size();
  const std::size_t lower = (count - 1) / 2;
  const double median = count % 2 == 1 ? estimates[order[lower]].fd
                                       : 0.5 * (estimates[order[lower]].fd + estimates[order[lower + 1]].fd);

  Estimate& mid = estimates[order[lower]];
  Estimate est = make_estimate(cfg.diff_order == 1 ? "transect.var" : "transect.incr", 1.0 + median,
                               std::move(mid.fit), 2.0, 3.0);
  est.p = cfg.p;
  if (skipped > 0) {
    est.warnings.push_back(std::to_string(skipped) + " of " + std::to_string(skipped + count) +
                           " transects skipped as degenerate");
  }
  return est;
}

}  // namespace fractal
