#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "fdim/core.hpp"

namespace fractal {

enum class PeriodogramKind { Semi, Dct2 };

/// Leading term of the semi-periodogram sum. `Printed` uses (X_0 + X_1) / 2,
/// `Trapezoid` the endpoint form (X_0 + X_2m) / 2.
enum class SemiEndpoint { Printed, Trapezoid };

struct Periodogram {
  PeriodogramKind kind = PeriodogramKind::Semi;
  std::size_t m = 0;  // n_s = 2m + 1
  /// All frequencies below Nyquist, strictly increasing.
  std::vector<double> frequencies;
  std::vector<double> values;
  /// The first `used` frequencies enter the regression.
  std::size_t used = 0;
  std::vector<std::string> warnings;
};

/// B(omega) for an odd-length series sampled at i/(2m).
double semi_transform(const Series& series, double omega, SemiEndpoint endpoint = SemiEndpoint::Printed);

/// Scaled DCT-II sum at an arbitrary frequency for an odd-length series.
double dct2_transform(const Series& series, double omega);

/// Semi-periodogram at omega_l = 2 pi l; an even-length series loses its last sample.
Periodogram semiperiodogram(const Series& series, SemiEndpoint endpoint = SemiEndpoint::Printed);

/// DCT-II periodogram at omega_l = 2 pi l m / (2m + 1).
Periodogram dct2_periodogram(const Series& series);

/// fd = 5/2 + slope/2 of log J on log omega.
Estimate semiperiodogram_estimate(const Series& series, SemiEndpoint endpoint = SemiEndpoint::Printed);
Estimate dct2_estimate(const Series& series);

enum class WaveletFilter { Haar, D4, LA8 };

WaveletFilter parse_wavelet_filter(std::string_view id);
std::string_view to_string(WaveletFilter filter);

/// Scaling filter coefficients (unit norm, summing to sqrt(2)).
std::vector<double> scaling_filter(WaveletFilter filter);

struct ModwtResult {
  /// wavelet[j - 1] holds level-j coefficients over the reflected series.
  std::vector<std::vector<double>> wavelet;
  std::vector<double> scaling;
};

/// MODWT of the series extended by reflection to length 2 n_s.
ModwtResult modwt(const Series& series, WaveletFilter filter, std::size_t levels);

struct WaveletVariances {
  std::vector<std::size_t> levels;
  std::vector<double> scales;     // tau_j = 2^(j-1)
  std::vector<double> variances;  // ||W_j||^2 / (2 n_s)
  std::vector<double> edofs;      // chi-square equivalent degrees of freedom
};

WaveletVariances wavelet_variances(const Series& series, WaveletFilter filter = WaveletFilter::Haar);

/// Weighted fit of log wavelet variance on log tau over levels
/// max{1, floor(log2(n_s)/3 - 1)} .. floor(log2 n_s); fd = 2 - slope/2.
Estimate wavelet_estimate(const Series& series, WaveletFilter filter = WaveletFilter::Haar);

}  // namespace fractal
