#include "fdim/boxcount.hpp"

#include <algorithm>
#include <cmath>

namespace fractal {

namespace {

struct Span {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;
};

// Range of the interpolant over index interval [a, b), or [a, b] when
// `closed_right` is set. Extremes sit at an endpoint or at an interior knot.
Span column_range(std::span<const double> x, double a, double b, bool closed_right) {
  const std::size_t n = x.size() - 1;
  auto eval = [&](double t) {
    const auto i = std::min(static_cast<std::size_t>(t), n);
    const double frac = t - static_cast<double>(i);
    if (i == n || frac == 0.0) return x[i];
    return x[i] + frac * (x[i + 1] - x[i]);
  };
  const double fa = eval(a);
  Span s{fa, fa, true, true};
  auto absorb = [&](double v, bool attained) {
    if (v < s.lo || (v == s.lo && attained)) {
      s.lo_closed = attained || (v == s.lo && s.lo_closed);
      s.lo = v;
    }
    if (v > s.hi || (v == s.hi && attained)) {
      s.hi_closed = attained || (v == s.hi && s.hi_closed);
      s.hi = v;
    }
  };
  for (auto i = static_cast<std::size_t>(std::floor(a)) + 1; static_cast<double>(i) < b; ++i) absorb(x[i], true);
  absorb(eval(b), closed_right);
  return s;
}

}  // namespace

BoxCountTable box_counts(const Series& series) {
  const auto x = series.values();
  const std::size_t n = series.n();
  const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
  const double lo = *mn;
  const double range = *mx - *mn;
  if (!(range > 0.0)) throw Error(ErrorCode::DegenerateSeries, "box count needs a non-constant series");

  std::size_t levels = 0;
  while ((std::size_t{1} << levels) < n) ++levels;

  BoxCountTable table;
  table.levels = levels;
  for (std::size_t k = 0; k <= levels; ++k) {
    const std::size_t cells = std::size_t{1} << (levels - k);
    const double cells_d = static_cast<double>(cells);
    const double width = static_cast<double>(n) / cells_d;  // column width in index units
    std::size_t count = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      const double a = static_cast<double>(c) * width;
      const bool last = c + 1 == cells;
      const double b = last ? static_cast<double>(n) : static_cast<double>(c + 1) * width;
      const Span s = column_range(x, a, b, last);
      const double ylo = (s.lo - lo) / range * cells_d;
      const double yhi = (s.hi - lo) / range * cells_d;
      const auto top = static_cast<long long>(cells) - 1;
      const long long r_min = std::min(top, static_cast<long long>(std::floor(ylo)));
      long long r_max = s.hi_closed ? static_cast<long long>(std::floor(yhi))
                                    : static_cast<long long>(std::ceil(yhi)) - 1;
      r_max = std::clamp(r_max, r_min, top);
      count += static_cast<std::size_t>(r_max - r_min + 1);
    }
    table.scales.push_back(std::ldexp(1.0, static_cast<int>(k) - static_cast<int>(levels)));
    table.counts.push_back(count);
  }
  return table;
}

Estimate boxcount_estimate(const Series& series, BoxCountMode mode) {
  const BoxCountTable table = box_counts(series);
  const double threshold = static_cast<double>(series.n()) / 5.0;
  std::vector<LogLogPoint> used;
  std::vector<LogLogPoint> excluded;
  for (std::size_t k = 0; k <= table.levels; ++k) {
    const LogLogPoint pt{std::log(table.scales[k]), std::log(static_cast<double>(table.counts[k]))};
    bool keep = true;
    if (mode == BoxCountMode::Standard) {
      keep = static_cast<double>(table.counts[k]) <= threshold && k + 2 <= table.levels;
    }
    (keep ? used : excluded).push_back(pt);
  }
  if (used.size() < 2) {
    throw Error(ErrorCode::InsufficientScales, "fewer than 2 box-count scales remain after exclusions");
  }
  FitResult fit = loglog_fit(std::move(used));
  const double fd = -fit.slope;
  Estimate est =
      make_estimate(mode == BoxCountMode::Naive ? "boxcount.naive" : "boxcount", fd, std::move(fit), 1.0, 2.0);
  est.excluded = std::move(excluded);
  return est;
}

}  // namespace fractal
