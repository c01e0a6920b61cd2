#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "fdim/core.hpp"

namespace fractal {

/// An estimator selection written as `name[:key=value]...`.
///
/// 1D names: madogram, variogram, rodogram, variation (needs p), hallwood,
/// boxcount, boxcount.naive, periodogram, dct2, wavelet.
/// 2D names: isotropic, filter, squareincr, transect.var, transect.incr.
/// Keys: p, diff (1 or 2), L (regression lags), filter (haar | d4 | la8),
/// endpoint (printed | trapezoid), min (minimum valid transects).
struct MethodSpec {
  std::string name;
  std::optional<double> p;
  std::optional<int> diff;
  std::optional<std::size_t> lags;
  std::optional<std::string> filter;
  std::optional<std::string> endpoint;
  std::optional<std::size_t> min_transects;

  bool two_dimensional() const;
  /// Canonical text form; parse_method(m.label()) reproduces m.
  std::string label() const;
};

MethodSpec parse_method(std::string_view text);

Estimate run_method(const Series& series, const MethodSpec& method);
Estimate run_method(const Grid& grid, const MethodSpec& method);

}  // namespace fractal
