#pragma once

#include <string>
#include <string_view>

namespace fractal {

enum class Family { PoweredExponential, Cauchy, Dagum, Fbm };

Family parse_family(std::string_view name);
std::string_view to_string(Family family);

/// Parametric covariance/variogram model with fractal index alpha.
///   powered exponential  sigma(t) = exp(-|ct|^alpha),               alpha in (0, 2]
///   Cauchy               sigma(t) = (1 + |ct|^alpha)^(-tau/alpha),  alpha in (0, 2], tau > 0
///   Dagum                sigma(t) = 1 - (|ct|^tau / (1 + |ct|^tau))^(alpha/tau),
///                                                                  tau in (0, 2], alpha in (0, tau)
///   fBm                  gamma_2(t) = |ct|^alpha,                   alpha in (0, 2]
/// `variance` multiplies sigma (and gamma_2 for fBm).
struct CovarianceModel {
  Family family = Family::PoweredExponential;
  double alpha = 1.0;
  double c = 1.0;
  double tau = 1.0;
  double variance = 1.0;

  void validate() const;
  bool stationary() const noexcept { return family != Family::Fbm; }
  /// Hausdorff dimension d + 1 - alpha/2 of sample paths in dimension d.
  double dimension(int d) const noexcept { return d + 1.0 - alpha / 2.0; }
};

/// sigma(t); only defined for stationary families.
double covariance(const CovarianceModel& model, double t);

/// gamma_2(t) = sigma(0) - sigma(t), or |ct|^alpha scaled by the variance for fBm.
double variogram2(const CovarianceModel& model, double t);

}  // namespace fractal
