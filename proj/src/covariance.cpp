#include "fdim/covariance.hpp"

#include <cmath>

#include "fdim/core.hpp"

namespace fractal {

Family parse_family(std::string_view name) {
  if (name == "powered_exponential" || name == "stable") return Family::PoweredExponential;
  if (name == "cauchy") return Family::Cauchy;
  if (name == "dagum") return Family::Dagum;
  if (name == "fbm") return Family::Fbm;
  throw Error(ErrorCode::InvalidParameters, "unknown covariance family '" + std::string(name) + "'");
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::PoweredExponential: return "powered_exponential";
    case Family::Cauchy: return "cauchy";
    case Family::Dagum: return "dagum";
    case Family::Fbm: return "fbm";
  }
  return "powered_exponential";
}

void CovarianceModel::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidParameters, msg); };
  if (!(c > 0.0) || !std::isfinite(c)) fail("range parameter c must be positive");
  if (!(variance > 0.0) || !std::isfinite(variance)) fail("variance must be positive");
  switch (family) {
    case Family::PoweredExponential:
    case Family::Fbm:
      if (!(alpha > 0.0 && alpha <= 2.0)) fail("fractal index alpha must lie in (0, 2]");
      break;
    case Family::Cauchy:
      if (!(alpha > 0.0 && alpha <= 2.0)) fail("fractal index alpha must lie in (0, 2]");
      if (!(tau > 0.0) || !std::isfinite(tau)) fail("Cauchy tau must be positive");
      break;
    case Family::Dagum:
      if (!(tau > 0.0 && tau <= 2.0)) fail("Dagum tau must lie in (0, 2]");
      if (!(alpha > 0.0 && alpha < tau)) fail("Dagum alpha must lie in (0, tau)");
      break;
  }
}

double covariance(const CovarianceModel& model, double t) {
  model.validate();
  if (!model.stationary()) throw Error(ErrorCode::InvalidParameters, "fBm has no covariance function");
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidParameters, "distance must be non-negative");
  const double ct = model.c * t;
  double rho = 1.0;
  switch (model.family) {
    case Family::PoweredExponential:
      rho = std::exp(-std::pow(ct, model.alpha));
      break;
    case Family::Cauchy:
      rho = std::pow(1.0 + std::pow(ct, model.alpha), -model.tau / model.alpha);
      break;
    case Family::Dagum: {
      const double q = std::pow(ct, model.tau);
      rho = 1.0 - std::pow(q / (1.0 + q), model.alpha / model.tau);
      break;
    }
    case Family::Fbm:
      break;
  }
  return model.variance * rho;
}

double variogram2(const CovarianceModel& model, double t) {
  model.validate();
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidParameters, "distance must be non-negative");
  if (model.family == Family::Fbm) return model.variance * std::pow(model.c * t, model.alpha);
  return model.variance - covariance(model, t);
}

}  // namespace fractal
