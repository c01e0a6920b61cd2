#include "fdim/methods.hpp"

#include <array>
#include <charconv>
#include <set>

#include "fdim/boxcount.hpp"
#include "fdim/est2d.hpp"
#include "fdim/spectral.hpp"
#include "fdim/variation.hpp"

namespace fractal {

namespace {

struct MethodInfo {
  std::string_view name;
  bool two_d;
  std::string_view keys;  // allowed keys, space separated
};

constexpr std::array<MethodInfo, 15> kMethods{{
    {"madogram", false, "diff L"},
    {"variogram", false, "diff L"},
    {"rodogram", false, "diff L"},
    {"variation", false, "p diff L"},
    {"hallwood", false, "L"},
    {"boxcount", false, ""},
    {"boxcount.naive", false, ""},
    {"periodogram", false, "endpoint"},
    {"dct2", false, ""},
    {"wavelet", false, "filter"},
    {"isotropic", true, "p"},
    {"filter", true, "p"},
    {"squareincr", true, "p"},
    {"transect.var", true, "p min"},
    {"transect.incr", true, "p min"},
}};

const MethodInfo& lookup(std::string_view name) {
  for (const auto& m : kMethods) {
    if (m.name == name) return m;
  }
  throw Error(ErrorCode::InvalidParameters, "unknown method '" + std::string(name) + "'");
}

bool allows(const MethodInfo& info, std::string_view key) {
  std::string_view rest = info.keys;
  while (!rest.empty()) {
    const auto space = rest.find(' ');
    if (rest.substr(0, space) == key) return true;
    if (space == std::string_view::npos) break;
    rest.remove_prefix(space + 1);
  }
  return false;
}

[[noreturn]] void bad(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::InvalidParameters, "method '" + std::string(text) + "': " + why);
}

double parse_real(std::string_view text, std::string_view value) {
  auto one = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) bad(text, "bad number '" + std::string(value) + "'");
    return v;
  };
  const auto slash = value.find('/');
  if (slash == std::string_view::npos) return one(value);
  const double den = one(value.substr(slash + 1));
  if (den == 0.0) bad(text, "zero denominator in '" + std::string(value) + "'");
  return one(value.substr(0, slash)) / den;
}

std::size_t parse_count(std::string_view text, std::string_view value) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) bad(text, "bad integer '" + std::string(value) + "'");
  return v;
}

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

double variation_power(const MethodSpec& m) {
  if (m.name == "madogram") return 1.0;
  if (m.name == "variogram") return 2.0;
  if (m.name == "rodogram") return 0.5;
  return *m.p;
}

}  // namespace

bool MethodSpec::two_dimensional() const { return lookup(name).two_d; }

std::string MethodSpec::label() const {
  std::string out = name;
  if (p) out += ":p=" + format_real(*p);
  if (diff) out += ":diff=" + std::to_string(*diff);
  if (lags) out += ":L=" + std::to_string(*lags);
  if (filter) out += ":filter=" + *filter;
  if (endpoint) out += ":endpoint=" + *endpoint;
  if (min_transects) out += ":min=" + std::to_string(*min_transects);
  return out;
}

MethodSpec parse_method(std::string_view text) {
  MethodSpec spec;
  std::string_view rest = text;
  auto next_token = [&] {
    const auto colon = rest.find(':');
    std::string_view tok = rest.substr(0, colon);
    rest = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
    return tok;
  };
  spec.name = std::string(next_token());
  const MethodInfo& info = lookup(spec.name);
  std::set<std::string_view> seen;
  while (!rest.empty()) {
    const std::string_view tok = next_token();
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) bad(text, "expected key=value, got '" + std::string(tok) + "'");
    const std::string_view key = tok.substr(0, eq);
    const std::string_view value = tok.substr(eq + 1);
    if (!allows(info, key)) bad(text, "option '" + std::string(key) + "' does not apply");
    if (!seen.insert(key).second) bad(text, "option '" + std::string(key) + "' given twice");
    if (key == "p") {
      spec.p = parse_real(text, value);
      if (!(*spec.p > 0.0)) bad(text, "p must be positive");
    } else if (key == "diff") {
      const auto d = parse_count(text, value);
      if (d != 1 && d != 2) bad(text, "diff must be 1 or 2");
      spec.diff = static_cast<int>(d);
    } else if (key == "L") {
      spec.lags = parse_count(text, value);
      if (*spec.lags < 2) bad(text, "L must be at least 2");
    } else if (key == "filter") {
      parse_wavelet_filter(value);
      spec.filter = std::string(value);
    } else if (key == "endpoint") {
      if (value != "printed" && value != "trapezoid") bad(text, "endpoint must be printed or trapezoid");
      spec.endpoint = std::string(value);
    } else if (key == "min") {
      spec.min_transects = parse_count(text, value);
      if (*spec.min_transects < 1) bad(text, "min must be at least 1");
    }
  }
  if (spec.name == "variation" && !spec.p) bad(text, "variation needs p=<power>");
  return spec;
}

Estimate run_method(const Series& series, const MethodSpec& m) {
  if (m.two_dimensional()) throw Error(ErrorCode::InvalidParameters, "method '" + m.name + "' needs 2D input");
  const std::string& name = m.name;
  if (name == "madogram" || name == "variogram" || name == "rodogram" || name == "variation") {
    return variation_estimate(series, VariationConfig{variation_power(m), m.lags.value_or(2), m.diff.value_or(1)});
  }
  if (name == "hallwood") return hallwood_estimate(series, m.lags.value_or(2));
  if (name == "boxcount") return boxcount_estimate(series, BoxCountMode::Standard);
  if (name == "boxcount.naive") return boxcount_estimate(series, BoxCountMode::Naive);
  if (name == "periodogram") {
    const bool trapezoid = m.endpoint && *m.endpoint == "trapezoid";
    Estimate est = semiperiodogram_estimate(series, trapezoid ? SemiEndpoint::Trapezoid : SemiEndpoint::Printed);
    if (trapezoid) est.method += ":endpoint=trapezoid";
    return est;
  }
  if (name == "dct2") return dct2_estimate(series);
  if (name == "wavelet") return wavelet_estimate(series, parse_wavelet_filter(m.filter.value_or("haar")));
  throw Error(ErrorCode::InvalidParameters, "unhandled method '" + name + "'");
}

Estimate run_method(const Grid& grid, const MethodSpec& m) {
  if (!m.two_dimensional()) throw Error(ErrorCode::InvalidParameters, "method '" + m.name + "' needs 1D input");
  const std::string& name = m.name;
  if (name == "isotropic") return isotropic_estimate(grid, m.p.value_or(2.0));
  if (name == "filter") return filter_estimate(grid, m.p.value_or(2.0));
  if (name == "squareincr") return square_increment_estimate(grid, m.p.value_or(2.0));
  TransectConfig cfg;
  cfg.p = m.p.value_or(1.0);
  cfg.diff_order = name == "transect.var" ? 1 : 2;
  cfg.min_valid_transects = m.min_transects.value_or(1);
  return transect_estimate(grid, cfg);
}

}  // namespace fractal
