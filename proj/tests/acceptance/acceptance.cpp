// Acceptance criteria, one PASS/FAIL line each.
// Usage: acceptance [criterion numbers...]   (no arguments runs all 13)

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fdim/bootstrap.hpp"
#include "fdim/boxcount.hpp"
#include "fdim/est2d.hpp"
#include "fdim/experiment.hpp"
#include "fdim/random.hpp"
#include "fdim/simulate.hpp"
#include "fdim/spectral.hpp"
#include "fdim/variation.hpp"

using namespace fractal;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string num(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// ---- independent reference computations -------------------------------

double ref_variation(const std::vector<double>& x, double p, std::size_t l) {
  const std::size_t n = x.size() - 1;
  double s = 0.0;
  for (std::size_t i = l; i <= n; ++i) s += std::pow(std::abs(x[i] - x[i - l]), p);
  return s / (2.0 * (n - l));
}

double ref_hallwood(const std::vector<double>& x, std::size_t l, std::size_t j) {
  const std::size_t n = x.size() - 1;
  double s = 0.0;
  for (std::size_t i = 1; i <= (n - j) / l; ++i) s += std::abs(x[i * l + j] - x[i * l + j - l]);
  return double(l) / double(n) * s;
}

double semivariance(const Series& s, std::size_t lag) {
  double acc = 0.0;
  for (std::size_t i = lag; i < s.size(); ++i) acc += (s[i] - s[i - lag]) * (s[i] - s[i - lag]);
  return acc / (2.0 * (s.size() - lag));
}

double grid_semivariance_unit(const Grid& g) {
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (j + 1 < g.cols()) {
        acc += (g(i, j + 1) - g(i, j)) * (g(i, j + 1) - g(i, j));
        ++count;
      }
      if (i + 1 < g.rows()) {
        acc += (g(i + 1, j) - g(i, j)) * (g(i + 1, j) - g(i, j));
        ++count;
      }
    }
  }
  return acc / (2.0 * count);
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

double se_of_mean(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / (v.size() - 1) / v.size());
}

StudyConfig study(std::vector<double> alphas, std::vector<std::size_t> sizes, std::vector<std::string> methods,
                  std::size_t reps, std::uint64_t seed) {
  StudyConfig cfg;
  cfg.models.push_back({Family::PoweredExponential, std::move(alphas), 1.0, 1.0, 1.0});
  cfg.sizes = std::move(sizes);
  for (const auto& m : methods) cfg.estimators.push_back(parse_method(m));
  cfg.replicates = reps;
  cfg.seed = seed;
  cfg.threads = 0;
  return cfg;
}

const CellResult& cell(const StudyResult& r, double alpha, std::size_t n, const std::string& est) {
  for (const auto& c : r.cells) {
    if (c.alpha == alpha && c.n == n && c.estimator == est) return c;
  }
  throw std::runtime_error("missing cell " + est);
}

std::string cell_note(const CellResult& c) {
  return c.estimator + " mean " + num(c.mean, 5) + " rmse " + num(c.rmse, 4) +
         (c.failures ? " failures " + std::to_string(c.failures) : "");
}

// ---- criteria -----------------------------------------------------------

Outcome ac1() {
  Outcome o;
  const std::vector<double> x{0, 1, 0, 2, 0}, y{0, 1, 0, 2, 1};
  const Series s(x), t(y);
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12; };
  o.require(close(power_variation(s, 1, 1), 1.0) && close(ref_variation(x, 1, 1), 1.0), "V1(1/4) = 1");
  o.require(close(power_variation(s, 1, 2), 0.25) && close(ref_variation(x, 1, 2), 0.25), "V1(2/4) = 0.25");
  o.require(close(power_variation(s, 2, 1), 5.0 / 3.0) && close(power_variation(s, 2, 2), 0.25), "V2 = 5/3, 1/4");
  const double mad = variation_estimate(s, {1.0, 2, 1}).fd;
  o.require(close(mad, 4.0), "madogram fd " + num(mad, 15));
  const double var = variation_estimate(s, {2.0, 2, 1}).fd;
  o.require(close(var, 2.0 - 0.5 * std::log2(3.0 / 20.0)), "variogram fd " + num(var, 15));
  o.require(close(hallwood_area(t, 2, 0), 0.5) && close(hallwood_area(t, 2, 1), 0.5) &&
                close(hallwood_area(t, 1, 0), 1.25) && close(ref_hallwood(y, 1, 0), 1.25),
            "Hall-Wood areas 1.25, 0.5, 0.5");
  const double hw = hallwood_estimate(t).fd;
  o.require(close(hw, 2.0 - std::log2(0.4)), "Hall-Wood fd " + num(hw, 15));
  bool degenerate = false;
  try {
    hallwood_estimate(s);
  } catch (const Error& e) {
    degenerate = e.code() == ErrorCode::DegenerateSeries;
  }
  o.require(degenerate, "Hall-Wood on (0,1,0,2,0) is degenerate");
  return o;
}

Outcome ac2() {
  Outcome o;
  for (std::size_t n : {4, 1024}) {
    std::vector<double> x(n + 1);
    for (std::size_t i = 0; i <= n; ++i) x[i] = double(i) / n;
    const Series s(x);
    const std::vector<std::pair<std::string, double>> fds{
        {"madogram", variation_estimate(s, {1.0, 2, 1}).fd},
        {"variogram", variation_estimate(s, {2.0, 2, 1}).fd},
        {"rodogram", variation_estimate(s, {0.5, 2, 1}).fd},
        {"hallwood", hallwood_estimate(s).fd},
        {"boxcount.naive", boxcount_estimate(s, BoxCountMode::Naive).fd}};
    for (const auto& [name, fd] : fds) {
      o.require(std::abs(fd - 1.0) <= 1e-12, "n=" + std::to_string(n) + " " + name + " " + num(fd, 12));
    }
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> z;
  double worst = 0.0;
  for (int r = 0; r < 100; ++r) {
    const std::size_t len = 11 + rng() % 500;
    std::vector<double> x(len);
    for (auto& v : x) v = z(rng) * std::exp(z(rng));
    const Series s(x);
    const double n = double(s.n());
    for (std::size_t l : {1, 2, 3, 5}) {
      double sum = 0.0;
      for (std::size_t j = 0; j < l; ++j) sum += hallwood_area(s, l, j);
      const double rhs = 2.0 * l * (n - l) / n * power_variation(s, 1, l);
      worst = std::max(worst, std::abs(sum - rhs) / rhs);
    }
  }
  o.require(worst <= 1e-12, "worst relative gap " + num(worst, 3) + " over 100 series x 4 lags");
  return o;
}

Outcome ac4() {
  Outcome o;
  const auto r = run_study(study({0.4, 1.0, 1.6}, {1024}, {"madogram", "variogram", "boxcount"}, 500, 4));
  for (double a : {0.4, 1.0, 1.6}) {
    const double truth = 2.0 - a / 2.0;
    for (const char* est : {"madogram", "variogram"}) {
      const auto& c = cell(r, a, 1024, est);
      o.require(std::abs(c.mean - truth) <= 0.1, "alpha " + num(a) + " " + cell_note(c) + " truth " + num(truth));
    }
  }
  const auto& box = cell(r, 1.0, 1024, "boxcount");
  o.require(box.mean < 1.5, "alpha 1 " + cell_note(box) + " below 1.5");
  return o;
}

Outcome ac5() {
  Outcome o;
  const auto r = run_study(study({1.0}, {1024}, {"variogram", "madogram", "hallwood", "dct2", "periodogram"}, 1000, 5));
  const auto& v = cell(r, 1.0, 1024, "variogram");
  const auto& m = cell(r, 1.0, 1024, "madogram");
  const auto& h = cell(r, 1.0, 1024, "hallwood");
  const auto& d = cell(r, 1.0, 1024, "dct2");
  const auto& p = cell(r, 1.0, 1024, "periodogram");
  o.require(v.rmse <= m.rmse, "rmse variogram " + num(v.rmse, 5) + " <= madogram " + num(m.rmse, 5));
  o.require(m.rmse <= h.rmse, "rmse madogram " + num(m.rmse, 5) + " <= hallwood " + num(h.rmse, 5));
  o.require(d.rmse < p.rmse, "rmse dct2 " + num(d.rmse, 5) + " < periodogram " + num(p.rmse, 5));
  return o;
}

Outcome ac6() {
  Outcome o;
  const std::vector<std::size_t> sizes{64, 128, 256, 512, 1024, 2048};
  const auto r = run_study(study({1.0}, sizes, {"madogram"}, 500, 6));
  std::vector<double> s, y;
  std::string trail;
  for (std::size_t n : sizes) {
    const auto& c = cell(r, 1.0, n, "madogram");
    s.push_back(std::log(double(n)));
    y.push_back(std::log(c.rmse));
    trail += " " + num(c.rmse, 4);
  }
  const double ms = mean_of(s), my = mean_of(y);
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    sxy += (s[i] - ms) * (y[i] - my);
    sxx += (s[i] - ms) * (s[i] - ms);
  }
  const double slope = sxy / sxx;
  o.require(slope >= -0.65 && slope <= -0.35, "log rmse slope " + num(slope, 4) + " (rmse" + trail + ")");
  return o;
}

Outcome ac7() {
  Outcome o;
  auto cfg = study({1.6}, {1024}, {"rodogram", "variogram"}, 1000, 7);
  cfg.contamination = ContaminationSpec{5, 0.1};
  const auto r = run_study(cfg);
  const auto& rod = cell(r, 1.6, 1024, "rodogram");
  const auto& var = cell(r, 1.6, 1024, "variogram");
  o.require(rod.rmse < var.rmse, "rmse rodogram " + num(rod.rmse, 5) + " < variogram " + num(var.rmse, 5));
  return o;
}

Outcome ac8() {
  Outcome o;
  auto cfg = study({1.0}, {64}, {"isotropic:p=2", "filter:p=2", "transect.var:p=2"}, 200, 8);
  cfg.dimension = 2;
  const auto r = run_study(cfg);
  const auto& iso = cell(r, 1.0, 64, cfg.estimators[0].label());
  const auto& fil = cell(r, 1.0, 64, cfg.estimators[1].label());
  const auto& tra = cell(r, 1.0, 64, cfg.estimators[2].label());
  for (const auto* c : {&iso, &fil, &tra}) {
    o.require(std::abs(c->mean - 2.5) <= 0.15 && c->failures == 0, cell_note(*c));
  }
  o.require(fil.rmse <= iso.rmse, "rmse filter " + num(fil.rmse, 4) + " <= isotropic " + num(iso.rmse, 4));
  return o;
}

Outcome ac9() {
  Outcome o;
  CovarianceModel m;
  m.alpha = 1.9;
  const Grid clean = simulate_2d(m, 128, 128, 9);
  std::vector<double> v(clean.values().begin(), clean.values().end());
  v[64 * clean.cols() + 64] += 1e6;
  const Grid dirty(clean.rows(), clean.cols(), std::move(v));
  const double t0 = transect_estimate(clean).fd, t1 = transect_estimate(dirty).fd;
  const double f0 = filter_estimate(clean).fd, f1 = filter_estimate(dirty).fd;
  o.require(std::abs(t1 - t0) < 0.05, "transect " + num(t0, 5) + " -> " + num(t1, 5));
  o.require(std::abs(f1 - f0) > 0.2, "filter " + num(f0, 5) + " -> " + num(f1, 5));
  return o;
}

Outcome ac10() {
  Outcome o;
  CovarianceModel m;
  const std::size_t n = 1024;
  const Simulator1d sim(m, n);
  bool exact = true;
  for (std::size_t k = 0; k <= n; ++k) exact &= sim.first_row()[k] == covariance(m, double(k) / n);
  o.require(exact, "1D embedding row equals covariance at lags 0..n");
  std::vector<double> g1;
  for (std::uint64_t r = 0; r < 500; ++r) g1.push_back(semivariance(sim.draw(derive_seed(10, {r})), 1));
  const double want1 = variogram2(m, 1.0 / n), se1 = se_of_mean(g1);
  o.require(std::abs(mean_of(g1) - want1) <= 3 * se1,
            "1D lag-1 " + num(mean_of(g1), 6) + " vs " + num(want1, 6) + " (se " + num(se1, 3) + ")");

  const std::size_t n2 = 64;
  const Simulator2d sim2(m, n2, n2);
  bool exact2 = true;
  for (std::size_t i = 0; i <= n2; ++i) {
    for (std::size_t j = 0; j <= n2; ++j) {
      exact2 &= sim2.base()[i * sim2.embedding_cols() + j] == covariance(m, std::hypot(double(i) / n2, double(j) / n2));
    }
  }
  o.require(exact2, "2D embedding base equals covariance");
  std::vector<double> g2;
  for (std::uint64_t r = 0; r < 500; ++r) g2.push_back(grid_semivariance_unit(sim2.draw(derive_seed(11, {r}))));
  const double want2 = variogram2(m, 1.0 / n2), se2 = se_of_mean(g2);
  o.require(std::abs(mean_of(g2) - want2) <= 3 * se2,
            "2D unit distance " + num(mean_of(g2), 6) + " vs " + num(want2, 6) + " (se " + num(se2, 3) + ")");
  return o;
}

Outcome ac11() {
  Outcome o;
  constexpr double pi = std::numbers::pi;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  double worst_semi = 0.0, worst_dct = 0.0;
  for (int r = 0; r < 50; ++r) {
    const std::size_t m = 5 + rng() % 200;
    std::vector<double> x(2 * m + 1);
    for (auto& v : x) v = z(rng);
    const Series s(x);
    for (double d : {0.01, 0.5, 2.0, 9.3}) {
      worst_semi = std::max(worst_semi, std::abs(semi_transform(s, pi * m + d) - semi_transform(s, pi * m - d)));
      const double a = dct2_transform(s, 2 * pi * m + d), b = dct2_transform(s, 2 * pi * m - d);
      worst_dct = std::max(worst_dct, std::abs(a * a - b * b));
    }
  }
  o.require(worst_semi <= 1e-10, "semi symmetry gap " + num(worst_semi, 3));
  o.require(worst_dct <= 1e-10, "dct2 symmetry gap " + num(worst_dct, 3));
  std::vector<double> x(1025);
  for (auto& v : x) v = z(rng);
  const std::size_t ls = semiperiodogram(Series(x)).used, ld = dct2_periodogram(Series(x)).used;
  o.require(ls == 101 && ld == 406, "L semi " + std::to_string(ls) + ", dct2 " + std::to_string(ld));
  return o;
}

Outcome ac12() {
  Outcome o;
  CovarianceModel m;
  const Simulator1d sim(m, 512);
  std::size_t covered = 0;
  const std::size_t outer = 200;
  for (std::uint64_t r = 0; r < outer; ++r) {
    BootstrapConfig cfg;
    cfg.method = parse_method("madogram");
    cfg.replicates = 200;
    cfg.level = 0.90;
    cfg.seed = derive_seed(12, {r, 1});
    cfg.threads = 0;
    const auto res = bootstrap_ci(sim.draw(derive_seed(12, {r, 0})), cfg);
    covered += res.lower <= 1.5 && 1.5 <= res.upper;
  }
  const double cov = double(covered) / outer;
  o.require(cov >= 0.83 && cov <= 0.97, "coverage " + num(cov, 4));
  return o;
}

// ---- determinism through the command line ------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome ac13() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "fdim_acceptance_13";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream(dir / "study.json") << R"({"models": [{"family": "powered_exponential", "alpha": [0.8, 1.4]}],
      "n": [256], "estimators": ["madogram", "dct2", "wavelet"], "replicates": 20, "seed": 13,
      "contamination": {"count": 2, "sd": 0.1}})";
  }
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  const std::string bin = FDIM_CLI;
  // every seeded command, run under a given thread count into files tagged by run
  auto batch = [&](const std::string& tag, int threads) {
    const std::string t = " --threads " + std::to_string(threads) + " ";
    int bad = 0;
    bad += shell(bin + t + "simulate --alpha 1.1 --n 3000 --seed 13 --outliers 3 --out " + p("sim" + tag + ".txt")) != 0;
    bad += shell(bin + t + "simulate --alpha 1.1 --n 40 --n2 40 --seed 13 --out " + p("field" + tag + ".csv")) != 0;
    bad += shell(bin + t + "estimate " + p("sim" + tag + ".txt") +
                 " -m madogram -m boxcount -m periodogram -m wavelet --out " + p("est" + tag + ".json") + " --plot " +
                 p("est" + tag + ".svg")) != 0;
    bad += shell(bin + t + "estimate " + p("field" + tag + ".csv") + " --dim 2 -m isotropic -m transect.var --out " +
                 p("est2" + tag + ".json")) != 0;
    bad += shell(bin + t + "window " + p("sim" + tag + ".txt") + " --window 512 --step 64 -m madogram -m dct2 --out " +
                 p("win" + tag + ".json") + " --trace " + p("win" + tag + ".csv")) != 0;
    bad += shell(bin + t + "bootstrap " + p("sim" + tag + ".txt") + " --boot 40 --seed 13 --out " +
                 p("boot" + tag + ".json")) != 0;
    bad += shell(bin + t + "experiment " + p("study.json") + " --out " + p("exp" + tag + ".csv") + " --json " +
                 p("exp" + tag + ".json")) != 0;
    bad += shell(bin + t + "plot " + p("est" + tag + ".json") + " --out " + p("plot" + tag + ".svg")) != 0;
    return bad;
  };
  o.require(batch("_a", 1) == 0 && batch("_b", 1) == 0 && batch("_c", 4) == 0, "all commands exit 0");
  std::size_t files = 0, same = 0;
  for (const char* stem : {"sim", "field", "est", "est2", "win", "boot", "exp", "plot"}) {
    for (const char* ext : {".txt", ".csv", ".json", ".svg"}) {
      const fs::path a = dir / (std::string(stem) + "_a" + ext);
      if (!fs::exists(a)) continue;
      ++files;
      const std::string ref = slurp(a);
      bool ok = !ref.empty();
      for (const char* tag : {"_b", "_c"}) {
        // outputs derived from input paths carry the run tag; compare the tag-neutral text
        std::string other = slurp(dir / (std::string(stem) + tag + ext));
        for (auto pos = other.find(tag); pos != std::string::npos; pos = other.find(tag, pos)) other.replace(pos, 2, "_a");
        ok &= other == ref;
      }
      same += ok;
    }
  }
  o.require(files >= 10 && same == files, std::to_string(same) + "/" + std::to_string(files) +
                                              " output files byte-identical across runs and thread counts");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria{
      {1, {"exact hand oracles", ac1}},
      {2, {"smooth-limit ramp identity", ac2}},
      {3, {"madogram / Hall-Wood identity", ac3}},
      {4, {"unbiasedness band", ac4}},
      {5, {"RMSE ordering", ac5}},
      {6, {"convergence slope", ac6}},
      {7, {"robustness crossover", ac7}},
      {8, {"2D correctness", ac8}},
      {9, {"transect breakdown", ac9}},
      {10, {"simulation exactness", ac10}},
      {11, {"spectral symmetries", ac11}},
      {12, {"bootstrap coverage", ac12}},
      {13, {"determinism", ac13}},
  };
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  if (wanted.empty()) {
    for (const auto& [k, v] : criteria) wanted.push_back(k);
  }
  int failed = 0;
  for (int k : wanted) {
    const auto it = criteria.find(k);
    if (it == criteria.end()) {
      std::printf("AC%d UNKNOWN\n", k);
      ++failed;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = it->second.second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("AC%d %s  %s  [%s] (%.1fs)\n", k, out.pass ? "PASS" : "FAIL", it->second.first.c_str(),
                out.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !out.pass;
  }
  return failed == 0 ? 0 : 1;
}
