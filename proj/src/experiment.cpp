#include "fdim/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fdim/parallel.hpp"
#include "fdim/random.hpp"

namespace fractal {

using nlohmann::json;

void StudyConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidParameters, msg); };
  if (dimension != 1 && dimension != 2) fail("dimension must be 1 or 2");
  if (replicates < 1) fail("replicates must be at least 1");
  if (models.empty()) fail("study needs at least one model");
  if (sizes.empty()) fail("study needs at least one sample size");
  if (estimators.empty()) fail("study needs at least one estimator");
  for (const auto& m : models) {
    if (m.alphas.empty()) fail("model sweep without alpha values");
    for (double a : m.alphas) CovarianceModel{m.family, a, m.c, m.tau, m.variance}.validate();
    if (dimension == 2 && m.family == Family::Fbm) fail("2D studies support stationary families only");
  }
  for (std::size_t n : sizes) {
    if (n < 2) fail("sample sizes must be at least 2");
  }
  for (const auto& e : estimators) {
    if (e.two_dimensional() != (dimension == 2)) fail("estimator '" + e.label() + "' does not match the dimension");
  }
  if (contamination && !(contamination->sd > 0.0)) fail("outlier sd must be positive");
}

StudyResult run_study(const StudyConfig& cfg) {
  cfg.validate();
  StudyResult result;
  const std::size_t methods = cfg.estimators.size();
  std::uint64_t cell_id = 0;
  for (const auto& sweep : cfg.models) {
    for (double alpha : sweep.alphas) {
      const CovarianceModel model{sweep.family, alpha, sweep.c, sweep.tau, sweep.variance};
      for (std::size_t n : cfg.sizes) {
        const std::uint64_t cell = cell_id++;
        std::optional<Simulator1d> sim1;
        std::optional<Simulator2d> sim2;
        if (cfg.dimension == 1) {
          sim1.emplace(model, n);
        } else {
          sim2.emplace(model, n, n);
        }
        // fd[r * methods + e]
        std::vector<double> fd(cfg.replicates * methods, std::numeric_limits<double>::quiet_NaN());
        parallel_for(cfg.replicates, cfg.threads, [&](std::size_t r) {
          const std::uint64_t seed = derive_seed(cfg.seed, {cell, r});
          const std::uint64_t outlier_seed = derive_seed(seed, {0x6f75746cULL});
          auto apply = [&](const auto& data) {
            for (std::size_t e = 0; e < methods; ++e) {
              try {
                fd[r * methods + e] = run_method(data, cfg.estimators[e]).fd;
              } catch (const Error&) {
                // left as NaN, counted as a failure
              }
            }
          };
          if (sim1) {
            Series path = sim1->draw(seed);
            if (cfg.contamination) path = contaminate(path, *cfg.contamination, outlier_seed);
            apply(path);
          } else {
            Grid field = sim2->draw(seed);
            if (cfg.contamination) field = contaminate(field, *cfg.contamination, outlier_seed);
            apply(field);
          }
        });

        const double truth = model.dimension(cfg.dimension);
        for (std::size_t e = 0; e < methods; ++e) {
          CellResult c;
          c.family = sweep.family;
          c.alpha = alpha;
          c.c = sweep.c;
          c.tau = sweep.tau;
          c.n = n;
          c.estimator = cfg.estimators[e].label();
          c.truth = truth;
          c.replicates = cfg.replicates;
          std::vector<double> values(cfg.replicates);
          double sum = 0.0;
          for (std::size_t r = 0; r < cfg.replicates; ++r) {
            values[r] = fd[r * methods + e];
            if (std::isnan(values[r])) {
              ++c.failures;
            } else {
              sum += values[r];
              ++c.effective;
            }
          }
          if (c.effective > 0) {
            const double count = static_cast<double>(c.effective);
            c.mean = sum / count;
            double ss = 0.0;
            for (double v : values) {
              if (!std::isnan(v)) ss += (v - c.mean) * (v - c.mean);
            }
            c.bias = c.mean - truth;
            c.variance = ss / count;
            c.rmse = std::sqrt(c.bias * c.bias + c.variance);
            c.mc_se = c.effective > 1 ? std::sqrt(ss / (count - 1.0) / count)
                                      : std::numeric_limits<double>::quiet_NaN();
          } else {
            c.mean = c.bias = c.variance = c.rmse = c.mc_se = std::numeric_limits<double>::quiet_NaN();
          }
          result.cells.push_back(std::move(c));
          result.estimates.push_back(std::move(values));
        }
      }
    }
  }
  return result;
}

StudyConfig parse_study_config(const std::string& json_text) {
  StudyConfig cfg;
  try {
    const json doc = json::parse(json_text);
    cfg.dimension = doc.value("dimension", 1);
    for (const auto& m : doc.at("models")) {
      ModelSweep sweep;
      sweep.family = parse_family(m.at("family").get<std::string>());
      sweep.alphas = m.at("alpha").get<std::vector<double>>();
      sweep.c = m.value("c", 1.0);
      sweep.tau = m.value("tau", 1.0);
      sweep.variance = m.value("variance", 1.0);
      cfg.models.push_back(std::move(sweep));
    }
    cfg.sizes = doc.at("n").get<std::vector<std::size_t>>();
    for (const auto& e : doc.at("estimators")) cfg.estimators.push_back(parse_method(e.get<std::string>()));
    cfg.replicates = doc.at("replicates").get<std::size_t>();
    if (doc.contains("contamination") && !doc.at("contamination").is_null()) {
      const auto& c = doc.at("contamination");
      cfg.contamination = ContaminationSpec{c.at("count").get<std::size_t>(), c.value("sd", 0.1)};
    }
    cfg.seed = doc.value("seed", std::uint64_t{0});
    cfg.threads = doc.value("threads", std::size_t{1});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("study config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string study_to_csv(const StudyResult& result) {
  std::ostringstream out;
  out << "family,alpha,c,tau,n,estimator,truth,replicates,effective,failures,mean,bias,variance,rmse,mc_se\n";
  for (const auto& c : result.cells) {
    out << to_string(c.family) << ',' << number(c.alpha) << ',' << number(c.c) << ',' << number(c.tau) << ','
        << c.n << ',' << c.estimator << ',' << number(c.truth) << ',' << c.replicates << ',' << c.effective << ','
        << c.failures << ',' << number(c.mean) << ',' << number(c.bias) << ',' << number(c.variance) << ','
        << number(c.rmse) << ',' << number(c.mc_se) << '\n';
  }
  return out.str();
}

std::string study_to_json(const StudyResult& result) {
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  json cells = json::array();
  for (const auto& c : result.cells) {
    cells.push_back({{"family", to_string(c.family)},
                     {"alpha", c.alpha},
                     {"c", c.c},
                     {"tau", c.tau},
                     {"n", c.n},
                     {"estimator", c.estimator},
                     {"truth", c.truth},
                     {"replicates", c.replicates},
                     {"effective", c.effective},
                     {"failures", c.failures},
                     {"mean", num(c.mean)},
                     {"bias", num(c.bias)},
                     {"variance", num(c.variance)},
                     {"rmse", num(c.rmse)},
                     {"mc_se", num(c.mc_se)}});
  }
  return json{{"schema_version", 1}, {"cells", cells}}.dump(2) + "\n";
}

}  // namespace fractal
