#include "fdim/spectral.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace fractal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// floor of v that tolerates pow/cbrt landing just below an exact integer.
std::size_t safe_floor(double v) { return static_cast<std::size_t>(std::floor(v + 1e-9)); }

double two_thirds_power(std::size_t ns) {
  const double r = std::cbrt(static_cast<double>(ns));
  return r * r;
}

std::size_t half_length(const Series& series) {
  if (series.size() % 2 == 0) {
    throw Error(ErrorCode::InvalidParameters, "transform needs an odd number of samples (n_s = 2m + 1)");
  }
  return series.n() / 2;
}

// Returns the series itself when odd-length, otherwise a copy without the last sample.
Series odd_length(const Series& series, std::vector<std::string>& warnings) {
  if (series.size() % 2 == 1) return series;
  warnings.emplace_back("even number of samples; dropped the last sample to obtain n_s = 2m + 1");
  return series.slice(0, series.size() - 1);
}

Estimate periodogram_estimate(const Periodogram& pg, double magnitude, const char* method) {
  // |B| below this is rounding noise of the cosine sums.
  const double zero_level = 1e-12 * magnitude;
  std::vector<LogLogPoint> used;
  std::vector<LogLogPoint> excluded;
  std::size_t zeros = 0;
  for (std::size_t l = 0; l < pg.frequencies.size(); ++l) {
    const bool in_fit = l < pg.used;
    if (!(std::sqrt(pg.values[l]) > zero_level)) {
      if (in_fit) ++zeros;
      continue;
    }
    (in_fit ? used : excluded).push_back({std::log(pg.frequencies[l]), std::log(pg.values[l])});
  }
  if (used.size() < 2) {
    throw Error(ErrorCode::DegenerateSeries, std::string(method) + " values vanish at the regression frequencies");
  }
  FitResult fit = loglog_fit(std::move(used));
  const double fd = 2.5 + 0.5 * fit.slope;
  Estimate est = make_estimate(method, fd, std::move(fit), 1.0, 2.0);
  est.excluded = std::move(excluded);
  est.warnings.insert(est.warnings.begin(), pg.warnings.begin(), pg.warnings.end());
  if (zeros > 0) {
    est.warnings.push_back(std::to_string(zeros) + " zero periodogram values dropped from the fit");
  }
  return est;
}

double abs_sum(const Series& s) {
  double total = 0.0;
  for (double v : s.values()) total += std::fabs(v);
  return total;
}

}  // namespace

double semi_transform(const Series& series, double omega, SemiEndpoint endpoint) {
  const std::size_t m = half_length(series);
  const auto x = series.values();
  const double md = static_cast<double>(m);
  double sum = endpoint == SemiEndpoint::Printed ? 0.5 * (x[0] + x[1]) : 0.5 * (x[0] + x[2 * m]);
  for (std::size_t i = 1; i < 2 * m; ++i) {
    sum += x[i] * std::cos(omega * (static_cast<double>(i) - md) / md);
  }
  return sum / md;
}

double dct2_transform(const Series& series, double omega) {
  const std::size_t m = half_length(series);
  const auto x = series.values();
  double sum = 0.0;
  for (std::size_t i = 0; i <= 2 * m; ++i) {
    sum += x[i] * std::cos(omega * (2.0 * static_cast<double>(i) + 1.0) / (4.0 * static_cast<double>(m)));
  }
  return std::sqrt(2.0 / static_cast<double>(2 * m + 1)) * sum;
}

Periodogram semiperiodogram(const Series& input, SemiEndpoint endpoint) {
  Periodogram pg;
  pg.kind = PeriodogramKind::Semi;
  const Series series = odd_length(input, pg.warnings);
  const std::size_t m = series.n() / 2;
  if (m < 4) throw Error(ErrorCode::SeriesTooShort, "semi-periodogram needs m >= 4");
  pg.m = m;
  const std::size_t ns = series.size();
  const double md = static_cast<double>(m);
  pg.used = safe_floor(std::min(md / 2.0, two_thirds_power(ns)));

  // At omega = 2 pi l the cosine argument is 2 pi (l (i - m) mod m) / m.
  std::vector<double> table(m);
  for (std::size_t r = 0; r < m; ++r) table[r] = std::cos(kTwoPi * static_cast<double>(r) / md);
  const auto x = series.values();
  const double lead = endpoint == SemiEndpoint::Printed ? 0.5 * (x[0] + x[1]) : 0.5 * (x[0] + x[2 * m]);
  const std::size_t nyquist = m / 2;
  for (std::size_t l = 1; l <= nyquist; ++l) {
    double sum = lead;
    for (std::size_t i = 1; i < 2 * m; ++i) {
      sum += x[i] * table[(l * i) % m];  // l (i - m) = l i (mod m)
    }
    const double b = sum / md;
    pg.frequencies.push_back(kTwoPi * static_cast<double>(l));
    pg.values.push_back(b * b);
  }
  return pg;
}

Periodogram dct2_periodogram(const Series& input) {
  Periodogram pg;
  pg.kind = PeriodogramKind::Dct2;
  const Series series = odd_length(input, pg.warnings);
  const std::size_t m = series.n() / 2;
  if (m < 4) throw Error(ErrorCode::SeriesTooShort, "DCT-II periodogram needs m >= 4");
  pg.m = m;
  const std::size_t ns = series.size();
  pg.used = safe_floor(std::min(2.0 * static_cast<double>(m), 4.0 * two_thirds_power(ns)));

  const std::vector<double> y = detail::dct2(series.values());
  const double norm = 0.5 * std::sqrt(2.0 / static_cast<double>(ns));
  for (std::size_t l = 1; l <= 2 * m; ++l) {
    const double b = norm * y[l];
    pg.frequencies.push_back(kTwoPi * static_cast<double>(l) * static_cast<double>(m) / static_cast<double>(ns));
    pg.values.push_back(b * b);
  }
  return pg;
}

Estimate semiperiodogram_estimate(const Series& series, SemiEndpoint endpoint) {
  const Periodogram pg = semiperiodogram(series, endpoint);
  return periodogram_estimate(pg, abs_sum(series) / static_cast<double>(pg.m), "periodogram");
}

Estimate dct2_estimate(const Series& series) {
  const Periodogram pg = dct2_periodogram(series);
  const double ns = static_cast<double>(2 * pg.m + 1);
  return periodogram_estimate(pg, std::sqrt(2.0 / ns) * abs_sum(series), "dct2");
}

WaveletFilter parse_wavelet_filter(std::string_view id) {
  if (id == "haar") return WaveletFilter::Haar;
  if (id == "d4") return WaveletFilter::D4;
  if (id == "la8") return WaveletFilter::LA8;
  throw Error(ErrorCode::InvalidParameters, "unknown wavelet filter '" + std::string(id) + "'");
}

std::string_view to_string(WaveletFilter filter) {
  switch (filter) {
    case WaveletFilter::Haar: return "haar";
    case WaveletFilter::D4: return "d4";
    case WaveletFilter::LA8: return "la8";
  }
  return "haar";
}

std::vector<double> scaling_filter(WaveletFilter filter) {
  switch (filter) {
    case WaveletFilter::Haar:
      return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
    case WaveletFilter::D4:
      return {0.48296291314453416, 0.8365163037378079, 0.2241438680420134, -0.12940952255126037};
    case WaveletFilter::LA8:
      return {-0.07576571478927333, -0.02963552764599851, 0.49761866763201545, 0.8037387518059161,
              0.29785779560527736, -0.09921954357684722, -0.012603967262037833, 0.0322231006040427};
  }
  return {};
}

ModwtResult modwt(const Series& series, WaveletFilter filter, std::size_t levels) {
  const std::size_t ns = series.size();
  if (levels < 1 || levels >= 63 || (std::size_t{1} << levels) > ns) {
    throw Error(ErrorCode::SeriesTooShort, "MODWT needs n_s >= 2^levels");
  }
  const std::vector<double> g = scaling_filter(filter);
  const std::size_t width = g.size();
  std::vector<double> gt(width), ht(width);
  for (std::size_t l = 0; l < width; ++l) {
    gt[l] = g[l] / std::numbers::sqrt2;
    const double sign = l % 2 == 0 ? 1.0 : -1.0;
    ht[l] = sign * g[width - 1 - l] / std::numbers::sqrt2;
  }

  const std::size_t size = 2 * ns;
  std::vector<double> v(size);
  const auto x = series.values();
  for (std::size_t i = 0; i < ns; ++i) {
    v[i] = x[i];
    v[size - 1 - i] = x[i];
  }

  ModwtResult out;
  std::vector<double> next(size);
  for (std::size_t j = 1; j <= levels; ++j) {
    const std::size_t stride = (std::size_t{1} << (j - 1)) % size;
    std::vector<double> w(size);
    for (std::size_t t = 0; t < size; ++t) {
      double wsum = 0.0, vsum = 0.0;
      std::size_t idx = t;
      for (std::size_t l = 0; l < width; ++l) {
        wsum += ht[l] * v[idx];
        vsum += gt[l] * v[idx];
        idx = (idx + size - stride) % size;
      }
      w[t] = wsum;
      next[t] = vsum;
    }
    out.wavelet.push_back(std::move(w));
    v.swap(next);
  }
  out.scaling = std::move(v);
  return out;
}

WaveletVariances wavelet_variances(const Series& series, WaveletFilter filter) {
  const std::size_t ns = series.size();
  std::size_t top = 0;
  while ((std::size_t{1} << (top + 1)) <= ns) ++top;
  if (top < 1) throw Error(ErrorCode::SeriesTooShort, "wavelet variance needs at least 2 samples");
  const ModwtResult tr = modwt(series, filter, top);
  const double width = static_cast<double>(scaling_filter(filter).size());

  WaveletVariances wv;
  for (std::size_t j = 1; j <= top; ++j) {
    const auto& w = tr.wavelet[j - 1];
    double energy = 0.0;
    for (double c : w) energy += c * c;
    const double scale = std::ldexp(1.0, static_cast<int>(j) - 1);
    // Boundary-free coefficients of the original series over the filter's
    // autocorrelation width 2^j gives the equivalent degrees of freedom.
    const double filter_len = (std::ldexp(1.0, static_cast<int>(j)) - 1.0) * (width - 1.0) + 1.0;
    const double interior = static_cast<double>(ns) - filter_len + 1.0;
    wv.levels.push_back(j);
    wv.scales.push_back(scale);
    wv.variances.push_back(energy / static_cast<double>(w.size()));
    wv.edofs.push_back(std::max(interior / (2.0 * scale), 1.0));
  }
  return wv;
}

Estimate wavelet_estimate(const Series& series, WaveletFilter filter) {
  const WaveletVariances wv = wavelet_variances(series, filter);
  const double log2_ns = std::log2(static_cast<double>(series.size()));
  const auto floor_third = static_cast<long long>(std::floor(log2_ns / 3.0 - 1.0));
  const auto first = static_cast<std::size_t>(std::max<long long>(1, floor_third));

  std::vector<LogLogPoint> used;
  std::vector<LogLogPoint> excluded;
  std::vector<double> weights;
  for (std::size_t i = 0; i < wv.levels.size(); ++i) {
    if (!(wv.variances[i] > 0.0)) {
      if (wv.levels[i] >= first) {
        throw Error(ErrorCode::DegenerateSeries,
                    "wavelet variance vanishes at level " + std::to_string(wv.levels[i]));
      }
      continue;
    }
    // log of a scaled chi-square with eta dof has mean psi(eta/2) - log(eta/2)
    // and variance psi'(eta/2).
    const double half = wv.edofs[i] / 2.0;
    const LogLogPoint pt{std::log(wv.scales[i]),
                         std::log(wv.variances[i]) - boost::math::digamma(half) + std::log(half)};
    if (wv.levels[i] >= first) {
      used.push_back(pt);
      weights.push_back(1.0 / boost::math::trigamma(half));
    } else {
      excluded.push_back(pt);
    }
  }
  if (used.size() < 2) throw Error(ErrorCode::InsufficientScales, "wavelet fit needs at least 2 levels");
  FitResult fit = weighted_loglog_fit(std::move(used), std::move(weights));
  const double fd = 2.0 - 0.5 * fit.slope;
  Estimate est = make_estimate("wavelet", fd, std::move(fit), 1.0, 2.0);
  if (filter != WaveletFilter::Haar) est.method += ":filter=" + std::string(to_string(filter));
  est.excluded = std::move(excluded);
  return est;
}

}  // namespace fractal
