#pragma once

// Straightforward reference implementations used to check the library.
// Nothing here calls into the estimators under test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracle {

inline std::vector<double> random_walk(std::size_t len, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> x(len);
  double acc = 0.0;
  for (auto& v : x) {
    acc += z(rng);
    v = acc;
  }
  return x;
}

inline std::vector<double> gaussian(std::size_t len, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> x(len);
  for (auto& v : x) v = z(rng);
  return x;
}

inline double power_variation(const std::vector<double>& x, double p, std::size_t l) {
  const std::size_t n = x.size() - 1;
  double s = 0.0;
  for (std::size_t i = l; i <= n; ++i) s += std::pow(std::abs(x[i] - x[i - l]), p);
  return s / (2.0 * static_cast<double>(n - l));
}

inline double second_diff_variation(const std::vector<double>& x, double p, std::size_t l) {
  const std::size_t n = x.size() - 1;
  double s = 0.0;
  for (std::size_t i = l; i + l <= n; ++i) s += std::pow(std::abs(x[i + l] - 2.0 * x[i] + x[i - l]), p);
  return s / (2.0 * static_cast<double>(n - 2 * l));
}

inline double hallwood(const std::vector<double>& x, std::size_t l, std::size_t j) {
  const std::size_t n = x.size() - 1;
  double s = 0.0;
  for (std::size_t i = 1; i <= (n - j) / l; ++i) s += std::abs(x[i * l + j] - x[i * l + j - l]);
  return static_cast<double>(l) / static_cast<double>(n) * s;
}

// Two-point log-log slope.
inline double slope2(double s1, double y1, double s2, double y2) { return (y2 - y1) / (s2 - s1); }

inline double ols_slope(const std::vector<double>& s, const std::vector<double>& y) {
  double ms = 0, my = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    ms += s[i];
    my += y[i];
  }
  ms /= s.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sxy += (s[i] - ms) * (y[i] - my);
    sxx += (s[i] - ms) * (s[i] - ms);
  }
  return sxy / sxx;
}

// Interval of t in [0, 1] with open/closed ends, intersected constraint by constraint.
struct TInterval {
  double lo = 0.0, hi = 1.0;
  bool lo_open = false, hi_open = false;

  void at_least(double v, bool strict) {
    if (v > lo || (v == lo && strict)) {
      lo = v;
      lo_open = strict;
    }
  }
  void at_most(double v, bool strict) {
    if (v < hi || (v == hi && strict)) {
      hi = v;
      hi_open = strict;
    }
  }
  // c + d t  in  [a, b) or [a, b]
  void within(double c, double d, double a, double b, bool b_closed) {
    if (d == 0.0) {
      if (!(c >= a && (b_closed ? c <= b : c < b))) {
        lo = 1.0;
        hi = 0.0;
      }
      return;
    }
    const double ta = (a - c) / d;
    const double tb = (b - c) / d;
    if (d > 0) {
      at_least(ta, false);
      at_most(tb, !b_closed);
    } else {
      at_most(ta, false);
      at_least(tb, !b_closed);
    }
  }
  bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
};

// Box counts by testing every box against every segment of the interpolant.
inline std::vector<std::size_t> box_counts(const std::vector<double>& x) {
  const std::size_t n = x.size() - 1;
  std::size_t K = 0;
  while ((std::size_t{1} << K) < n) ++K;
  const double mn = *std::min_element(x.begin(), x.end());
  const double mx = *std::max_element(x.begin(), x.end());
  const double u = mx - mn;
  std::vector<std::size_t> counts;
  for (std::size_t k = 0; k <= K; ++k) {
    const std::size_t cells = std::size_t{1} << (K - k);
    const double w = 1.0 / static_cast<double>(cells);
    const double h = u / static_cast<double>(cells);
    std::size_t count = 0;
    for (std::size_t c = 0; c < cells; ++c) {
      const double x0 = c * w, x1 = (c + 1) * w;
      for (std::size_t r = 0; r < cells; ++r) {
        const double y0 = mn + r * h;
        const double y1 = r + 1 == cells ? mx : mn + (r + 1) * h;
        bool hit = false;
        for (std::size_t i = 0; i < n && !hit; ++i) {
          const double a = static_cast<double>(i) / n;
          const double b = static_cast<double>(i + 1) / n;
          if (b < x0 || a > x1) continue;
          TInterval t;
          t.within(a, b - a, x0, x1, c + 1 == cells);
          t.within(x[i], x[i + 1] - x[i], y0, y1, r + 1 == cells);
          hit = !t.empty();
        }
        count += hit;
      }
    }
    counts.push_back(count);
  }
  return counts;
}

// All ordered pairs of grid points, filtered by squared distance.
template <typename Fn>
void grid_pairs(std::size_t rows, std::size_t cols, long k2, Fn&& fn) {
  for (std::size_t a = 0; a < rows * cols; ++a) {
    for (std::size_t b = 0; b < rows * cols; ++b) {
      const long d1 = static_cast<long>(b / cols) - static_cast<long>(a / cols);
      const long d2 = static_cast<long>(b % cols) - static_cast<long>(a % cols);
      if (d1 * d1 + d2 * d2 == k2) fn(a / cols, a % cols, b / cols, b % cols);
    }
  }
}

// Limiting Kolmogorov distribution, P(K > x).
inline double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  double s = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = 2.0 * std::exp(-2.0 * k * k * x * x) * (k % 2 ? 1.0 : -1.0);
    s += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// KS p-value of a sample against N(0, sd^2).
inline double ks_normal_pvalue(std::vector<double> v, double sd) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = normal_cdf(v[i] / sd);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double sn = std::sqrt(n);
  return kolmogorov_survival((sn + 0.12 + 0.11 / sn) * d);
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

inline double sample_sd(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1));
}

}  // namespace oracle
