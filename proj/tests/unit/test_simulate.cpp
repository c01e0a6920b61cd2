#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fdim/est2d.hpp"
#include "fdim/random.hpp"
#include "fdim/simulate.hpp"
#include "oracles.hpp"

using namespace fractal;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidInput;
}

double lag_semivariance(const Series& s, std::size_t lag) {
  double acc = 0.0;
  for (std::size_t i = lag; i < s.size(); ++i) acc += (s[i] - s[i - lag]) * (s[i] - s[i - lag]);
  return acc / (2.0 * (s.size() - lag));
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("covariance closed forms") {
  CovarianceModel m;
  CHECK(covariance(m, 0.0) == 1.0);
  CHECK(variogram2(m, 0.0) == 0.0);
  CHECK(covariance(m, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  m.alpha = 1.5;
  m.c = 2.0;
  CHECK(covariance(m, 0.3) == doctest::Approx(std::exp(-std::pow(0.6, 1.5))).epsilon(1e-15));

  CovarianceModel cau{Family::Cauchy, 1.2, 1.5, 3.0, 2.0};
  CHECK(covariance(cau, 0.4) == doctest::Approx(2.0 * std::pow(1 + std::pow(0.6, 1.2), -3.0 / 1.2)).epsilon(1e-14));
  CovarianceModel dag{Family::Dagum, 0.5, 1.0, 1.5, 1.0};
  const double r = std::pow(0.7, 1.5);
  CHECK(covariance(dag, 0.7) == doctest::Approx(1 - std::pow(r / (1 + r), 0.5 / 1.5)).epsilon(1e-14));

  CovarianceModel fbm{Family::Fbm, 1.0, 1.0, 1.0, 1.0};
  CHECK(variogram2(fbm, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(covariance(fbm, 0.25), Error);
  CHECK(cau.dimension(1) == doctest::Approx(1.4));
  CHECK(cau.dimension(2) == doctest::Approx(2.4));
}

TEST_CASE("parameter domains") {
  CHECK(code_of([] { CovarianceModel{Family::PoweredExponential, 2.5, 1, 1, 1}.validate(); }) ==
        ErrorCode::InvalidParameters);
  CHECK(code_of([] { CovarianceModel{Family::PoweredExponential, 0.0, 1, 1, 1}.validate(); }) ==
        ErrorCode::InvalidParameters);
  CHECK(code_of([] { CovarianceModel{Family::PoweredExponential, 1.0, -1, 1, 1}.validate(); }) ==
        ErrorCode::InvalidParameters);
  CHECK(code_of([] { CovarianceModel{Family::Dagum, 1.0, 1, 0.8, 1}.validate(); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([] { CovarianceModel{Family::Cauchy, 1.0, 1, 0.0, 1}.validate(); }) == ErrorCode::InvalidParameters);
  CHECK(parse_family("stable") == Family::PoweredExponential);
  CHECK(parse_family(to_string(Family::Dagum)) == Family::Dagum);
  CHECK_THROWS_AS(parse_family("matern"), Error);
}

TEST_CASE("seeded draws repeat") {
  CovarianceModel m;
  CHECK(simulate_1d(m, 300, 42).values().size() == 301);
  const auto a = simulate_1d(m, 300, 42), b = simulate_1d(m, 300, 42), c = simulate_1d(m, 300, 43);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));
  const auto g1 = simulate_2d(m, 20, 24, 5), g2 = simulate_2d(m, 20, 24, 5);
  CHECK(g1.rows() == 21);
  CHECK(g1.cols() == 25);
  CHECK(std::equal(g1.values().begin(), g1.values().end(), g2.values().begin()));
}

TEST_CASE("embedding rows hold the target covariance") {
  for (double alpha : {0.5, 1.0, 1.9}) {
    CovarianceModel m;
    m.alpha = alpha;
    const Simulator1d sim(m, 256);
    CHECK(sim.embedding_size() >= 512);
    for (std::size_t k = 0; k <= 256; ++k) CHECK(sim.first_row()[k] == covariance(m, k / 256.0));
    // circulant symmetry
    const auto& row = sim.first_row();
    for (std::size_t k = 1; k < row.size(); ++k) CHECK(row[k] == row[row.size() - k]);
    for (double ev : sim.eigenvalues()) CHECK(ev >= 0.0);
  }
  CovarianceModel m;
  const Simulator2d sim(m, 16, 16);
  for (std::size_t i = 0; i <= 16; ++i) {
    for (std::size_t j = 0; j <= 16; ++j) {
      CHECK(sim.base()[i * sim.embedding_cols() + j] == covariance(m, std::hypot(i / 16.0, j / 16.0)));
    }
  }
  for (double ev : sim.eigenvalues()) CHECK(ev >= 0.0);
}

TEST_CASE("fbm paths") {
  CovarianceModel fbm{Family::Fbm, 1.0, 1.0, 1.0, 1.0};
  const Simulator1d sim(fbm, 512);
  CHECK(sim.draw(1)[0] == 0.0);
  // increment covariance at lag 0 is 2 gamma(1/n)
  CHECK(sim.first_row()[0] == doctest::Approx(2.0 / 512).epsilon(1e-14));

  CovarianceModel h{Family::Fbm, 1.4, 1.0, 1.0, 1.0};
  const Simulator1d hs(h, 512);
  for (std::size_t lag : {1, 8}) {
    std::vector<double> v;
    for (int r = 0; r < 300; ++r) v.push_back(lag_semivariance(hs.draw(900 + r), lag));
    const double want = std::pow(lag / 512.0, 1.4);
    CHECK(std::abs(oracle::mean(v) - want) < 3.0 * oracle::sample_sd(v) / std::sqrt(300.0));
  }
}

TEST_CASE("lag one semivariance matches the model") {
  CovarianceModel m;
  const Simulator1d sim(m, 1024);
  std::vector<double> v;
  for (int r = 0; r < 500; ++r) v.push_back(lag_semivariance(sim.draw(derive_seed(7, {std::uint64_t(r)})), 1));
  const double want = variogram2(m, 1.0 / 1024);
  CHECK(std::abs(oracle::mean(v) - want) < 3.0 * oracle::sample_sd(v) / std::sqrt(500.0));
}

TEST_CASE("field semivariance at unit distance") {
  CovarianceModel m;
  const Simulator2d sim(m, 64, 64);
  const auto k1 = LatticeDistance::from_squared(1);
  std::vector<double> v;
  for (int r = 0; r < 100; ++r) v.push_back(isotropic_variation(sim.draw(300 + r), 2.0, k1));
  const double want = variogram2(m, 1.0 / 64);
  CHECK(std::abs(oracle::mean(v) - want) < 3.0 * oracle::sample_sd(v) / std::sqrt(100.0));
}

TEST_CASE("near analytic fields are smooth at second order") {
  CovarianceModel m;
  m.alpha = 1.9999;
  const Grid g = simulate_2d(m, 32, 32, 11);
  const double iso = isotropic_variation(g, 2, LatticeDistance::from_squared(4));
  const double filt = filter_variation(g, 2, LatticeDistance::from_squared(4));
  CHECK(filt < 0.01 * iso);
}

TEST_CASE("2D rejects fbm") {
  CovarianceModel fbm{Family::Fbm, 1.0, 1.0, 1.0, 1.0};
  CHECK(code_of([&] { simulate_2d(fbm, 8, 8, 1); }) == ErrorCode::InvalidParameters);
}

TEST_CASE("contamination") {
  CovarianceModel m;
  const Series s = simulate_1d(m, 1024, 3);
  const Series same = contaminate(s, {0, 0.1}, 9);
  CHECK(std::equal(s.values().begin(), s.values().end(), same.values().begin()));

  const Series c = contaminate(s, {5, 0.1}, 9);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < s.size(); ++i) differ += s[i] != c[i];
  CHECK(differ >= 1);
  CHECK(differ <= 5);
  const Series c2 = contaminate(s, {5, 0.1}, 9);
  CHECK(std::equal(c.values().begin(), c.values().end(), c2.values().begin()));

  CHECK(code_of([&] { contaminate(Series({1, 2, 3}), {4, 0.1}, 1); }) == ErrorCode::InvalidParameters);
  CHECK(code_of([&] { contaminate(s, {1, 0.0}, 1); }) == ErrorCode::InvalidParameters);

  const Grid g = simulate_2d(m, 8, 8, 2);
  const Grid gc = contaminate(g, {3, 0.5}, 4);
  std::size_t gd = 0;
  for (std::size_t i = 0; i < g.values().size(); ++i) gd += g.values()[i] != gc.values()[i];
  CHECK(gd >= 1);
  CHECK(gd <= 3);
}

TEST_CASE("outlier sizes are normal") {
  const Series zero(std::vector<double>(200, 0.0));
  std::vector<double> sizes;
  for (std::uint64_t r = 0; r < 600; ++r) {
    const Series c = contaminate(zero, {1, 0.1}, derive_seed(123, {r}));
    for (double v : c.values()) {
      if (v != 0.0) sizes.push_back(v);
    }
  }
  CHECK(sizes.size() == 600);
  CHECK(oracle::ks_normal_pvalue(sizes, 0.1) > 0.001);
  // wrong scale is rejected
  CHECK(oracle::ks_normal_pvalue(sizes, 0.2) < 0.001);
}

}
