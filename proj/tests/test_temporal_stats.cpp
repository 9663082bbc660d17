#include <cmath>
#include <limits>
#include <random>

#include "burdenlab/errors.hpp"
#include "burdenlab/temporal_stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace burdenlab;

namespace {

// y_t = 0.8 y_{t-1} + 0.5 x_{t-2} + noise.
AlignedPair planted_lag2(std::uint64_t seed, std::size_t n = 200) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> x(n), y(n, 0.0);
  for (auto& v : x) v = g(rng);
  for (std::size_t t = 2; t < n; ++t) y[t] = 0.8 * y[t - 1] + 0.5 * x[t - 2] + 0.1 * g(rng);
  return AlignedPair::from_sequences(x, y, 1800);
}

}  // namespace

TEST_CASE("first_difference") {
  CHECK(first_difference(std::vector<double>{1, 3, 6}) == std::vector<double>{2, 3});
  CHECK(first_difference(std::vector<double>{4, 4, 4}) == std::vector<double>{0, 0});
  CHECK_THROWS_AS(first_difference(std::vector<double>{1}), InsufficientDataError);

  const auto pair = first_difference(AlignedPair::from_sequences({1, 2, 4}, {0, 0, 1}, 2000));
  CHECK(pair.years == std::vector<int>{2001, 2002});
  CHECK(pair.x == std::vector<double>{1, 2});
  CHECK(pair.y == std::vector<double>{0, 1});
}

TEST_CASE("repeated differencing flattens polynomials") {
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int degree = 1; degree <= 5; ++degree) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = coef(rng);
    std::vector<double> s(20);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double t = static_cast<double>(i) / 19.0;
      double acc = 0.0;
      for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
      s[i] = acc;
    }
    for (int i = 0; i < degree; ++i) s = first_difference(s);
    for (double v : s) CHECK(std::abs(v - s.front()) < 1e-9);
  }
}

TEST_CASE("ols_rss examples") {
  Matrix ones(3, 1);
  for (std::size_t i = 0; i < 3; ++i) ones(i, 0) = 1.0;
  const auto mean_fit = ols_rss(ones, std::vector<double>{1, 2, 3});
  CHECK(mean_fit.coefficients.front() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(mean_fit.rss == doctest::Approx(2.0).epsilon(1e-14));

  Matrix line(5, 2);
  std::vector<double> y(5);
  for (std::size_t i = 0; i < 5; ++i) {
    line(i, 0) = 1.0;
    line(i, 1) = static_cast<double>(i);
    y[i] = 3.0 - 2.0 * static_cast<double>(i);
  }
  const auto exact = ols_rss(line, y);
  double ss = 0.0;
  for (double v : y) ss += v * v;
  CHECK(exact.rss <= 1e-18 * ss);
  CHECK(exact.coefficients[1] == doctest::Approx(-2.0).epsilon(1e-12));

  Matrix dup(4, 2);
  for (std::size_t i = 0; i < 4; ++i) dup(i, 0) = dup(i, 1) = static_cast<double>(i + 1);
  try {
    ols_rss(dup, std::vector<double>{1, 2, 3, 5});
    FAIL("expected singular design");
  } catch (const SingularDesignError& e) {
    CHECK(e.rank() == 1);
  }
  CHECK_THROWS_AS(ols_rss(Matrix(2, 2), std::vector<double>{1, 2}), InsufficientDataError);
}

TEST_CASE("ols_rss agrees with extended-precision normal equations") {
  std::mt19937_64 rng(1212);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + rng() % 6;
    const std::size_t n = k + 2 + rng() % 40;
    Matrix a(n, k);
    std::vector<std::vector<double>> rows(n, std::vector<double>(k));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) rows[i][j] = a(i, j) = j == 0 ? 1.0 : g(rng);
      y[i] = g(rng);
    }
    const double want = oracle::ols_rss_normal_equations(rows, y);
    CHECK(ols_rss(a, y).rss == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("lag design shape") {
  std::vector<double> x(20), y(20);
  for (std::size_t i = 0; i < 20; ++i) {
    x[i] = static_cast<double>(i);
    y[i] = static_cast<double>(i * i);
  }
  const auto d = build_lag_design(x, y, 2);
  CHECK(d.n_eff == 18);
  CHECK(d.restricted.cols() == 3);
  CHECK(d.unrestricted.cols() == 5);
  CHECK(d.response.front() == y[2]);
  CHECK(d.unrestricted(0, 1) == y[1]);
  CHECK(d.unrestricted(0, 2) == y[0]);
  CHECK(d.unrestricted(0, 3) == x[1]);
  CHECK_THROWS_AS(build_lag_design(std::vector<double>(6, 0.0), std::vector<double>(6, 0.0), 2),
                  InsufficientDataError);
}

TEST_CASE("granger on perfect one-step predictability") {
  std::mt19937_64 rng(1313);
  std::normal_distribution<double> g;
  std::vector<double> x(50), y(50, 0.0);
  for (auto& v : x) v = g(rng);
  for (std::size_t t = 1; t < 50; ++t) y[t] = x[t - 1];
  const auto res = granger_test(AlignedPair::from_sequences(x, y), 1);
  CHECK(res.rss_unrestricted < 1e-20);
  CHECK(res.p_value < 1e-12);
  CHECK(res.n_eff == 49);
}

TEST_CASE("granger detects the planted lag-2 coupling") {
  const auto res = granger_test(planted_lag2(7), 2);
  CHECK(res.p_value < 0.01);
  CHECK(res.rss_unrestricted <= res.rss_restricted);
}

TEST_CASE("granger rejects gaps and short series") {
  AlignedPair gap{{1, 2, 3, 4, 5, 6, 7, 8}, {2, 1, 3, 5, 4, 6, 8, 7}, {1, 2, 3, 5, 6, 7, 8, 9}};
  CHECK_THROWS_AS(granger_test(gap, 1), NonContiguousError);
  CHECK_THROWS_AS(granger_test(AlignedPair::from_sequences({1, 2, 3, 4}, {4, 3, 1, 2}), 1),
                  InsufficientDataError);
}

TEST_CASE("f_sf examples") {
  CHECK(f_sf(0.0, 3, 7) == 1.0);
  for (double d : {1.0, 2.0, 5.0, 30.0}) CHECK(f_sf(1.0, d, d) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(f_sf(3.89, 1, 40) - 0.055515625539429450933) < 1e-12);
  CHECK(f_sf(std::numeric_limits<double>::infinity(), 2, 3) == 0.0);
  CHECK_THROWS_AS(f_sf(-1.0, 1, 1), DomainError);
  CHECK_THROWS_AS(f_sf(1.0, 0.5, 1), DomainError);
  CHECK_THROWS_AS(f_sf(1.0, 1, 0), DomainError);
}

TEST_CASE("f_sf matches the quadrature grid") {
  const auto rows = oracle::read_table("fsf_grid.txt");
  REQUIRE(rows.size() == 25);
  for (const auto& r : rows) {
    const double f = std::stod(r[0]), d1 = std::stod(r[1]), d2 = std::stod(r[2]);
    INFO("f=" << f << " d1=" << d1 << " d2=" << d2);
    CHECK(std::abs(f_sf(f, d1, d2) - std::stod(r[3])) < 1e-10);
  }
}

TEST_CASE("lag_sweep picks the planted lag and records skips") {
  const auto sweep = lag_sweep(planted_lag2(11), 5);
  CHECK(sweep.results.size() == 5);
  CHECK(sweep.skipped.empty());
  CHECK(sweep.best().lag == 2);

  std::mt19937_64 rng(1717);
  std::normal_distribution<double> g;
  std::vector<double> x(12), y(12);
  for (std::size_t i = 0; i < 12; ++i) {
    x[i] = g(rng);
    y[i] = g(rng);
  }
  const auto partial = lag_sweep(AlignedPair::from_sequences(x, y), 5);
  // n - p > 1 + 2p holds for p <= 3 when n = 12.
  CHECK(partial.results.size() == 3);
  REQUIRE(partial.skipped.size() == 2);
  CHECK(partial.skipped[0].lag == 4);
  CHECK(partial.skipped[0].reason == "insufficient_data");
  CHECK_THROWS_AS(lag_sweep(AlignedPair::from_sequences({1, 2, 3}, {3, 1, 2}), 2),
                  InsufficientDataError);
}

TEST_CASE("property: nesting and scale invariance") {
  std::mt19937_64 rng(1414);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 15 + rng() % 80;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = (i ? 0.5 * y[i - 1] : 0.0) + (i ? 0.3 * x[i - 1] : 0.0) + g(rng);
    }
    const std::size_t lag = 1 + rng() % 3;
    const auto base = granger_test(AlignedPair::from_sequences(x, y), lag);
    CHECK(base.rss_unrestricted <= base.rss_restricted * (1 + 1e-9));
    CHECK(base.f_stat >= 0.0);
    CHECK(base.p_value >= 0.0);
    CHECK(base.p_value <= 1.0);

    const double cx = std::exp(3 * g(rng)), cy = std::exp(3 * g(rng));
    std::vector<double> sx(x), sy(y);
    for (auto& v : sx) v *= cx;
    for (auto& v : sy) v *= cy;
    const auto scaled = granger_test(AlignedPair::from_sequences(sx, sy), lag);
    CHECK(scaled.f_stat == doctest::Approx(base.f_stat).epsilon(1e-8));
  }
}

TEST_CASE("granger direction matters on the planted system") {
  int forward = 0, reverse = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pair = planted_lag2(seed);
    if (granger_test(pair, 2).p_value < 0.01) ++forward;
    if (granger_test(pair.swapped(), 2).p_value > 0.05) ++reverse;
  }
  CHECK(forward >= 19);
  CHECK(reverse >= 15);
}
