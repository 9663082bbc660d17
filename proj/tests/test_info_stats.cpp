#include <algorithm>
#include <cmath>
#include <random>

#include "burdenlab/errors.hpp"
#include "burdenlab/info_stats.hpp"
#include "burdenlab/linear_stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace burdenlab;

namespace {

std::vector<int> labels(std::vector<double> v, int bins, BinningStrategy s) {
  return discretize(v, bins, s);
}

JointHistogram histogram(std::initializer_list<std::initializer_list<std::size_t>> counts) {
  const int bx = static_cast<int>(counts.size());
  const int by = static_cast<int>(counts.begin()->size());
  JointHistogram h(bx, by);
  int i = 0;
  for (const auto& row : counts) {
    int j = 0;
    for (std::size_t c : row) h.add(i, j++, c);
    ++i;
  }
  return h;
}

}  // namespace

TEST_CASE("discretize") {
  CHECK(labels({1, 2, 3, 4}, 2, BinningStrategy::EqualFrequency) == std::vector<int>{0, 0, 1, 1});
  CHECK(labels({0, 0.1, 0.2, 10}, 2, BinningStrategy::EqualWidth) == std::vector<int>{0, 0, 0, 1});
  CHECK(labels({5, 5, 5, 5}, 2, BinningStrategy::EqualWidth) == std::vector<int>{0, 0, 0, 0});
  CHECK(labels({3, 3, 3, 3}, 2, BinningStrategy::EqualFrequency) == std::vector<int>{0, 0, 1, 1});
  CHECK(labels({4, 3, 2, 1}, 4, BinningStrategy::EqualFrequency) == std::vector<int>{3, 2, 1, 0});
  CHECK_THROWS_AS(labels({1, 2, 3}, 1, BinningStrategy::EqualWidth), DomainError);
  CHECK_THROWS_AS(labels({1, 2, 3}, 4, BinningStrategy::EqualFrequency), DomainError);
}

TEST_CASE("entropy") {
  CHECK(entropy(std::vector<int>{0, 0, 1, 1}) == 1.0);
  CHECK(entropy(std::vector<int>{0, 0, 0, 0}) == 0.0);
  CHECK(entropy(std::vector<int>{0, 1, 2, 3}) == 2.0);
  CHECK_THROWS_AS(entropy(std::vector<int>{}), DomainError);
}

TEST_CASE("mutual information of constructed joints") {
  CHECK(std::abs(histogram({{25, 25}, {25, 25}}).mutual_information()) < 1e-12);
  CHECK(std::abs(histogram({{50, 0}, {0, 50}}).mutual_information() - 1.0) < 1e-12);
  CHECK(std::abs(histogram({{7, 0, 0, 0}, {0, 7, 0, 0}, {0, 0, 7, 0}, {0, 0, 0, 7}})
                     .mutual_information() -
                 2.0) < 1e-12);
  CHECK(std::abs(histogram({{10, 30}, {20, 60}}).mutual_information()) < 1e-12);
}

TEST_CASE("mutual information of identical sequences") {
  std::vector<double> x(100);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(static_cast<double>(i) * 1.7);
  const auto res = mutual_information(AlignedPair::from_sequences(x, x), 4);
  CHECK(res.bins_x == 4);
  CHECK(res.bins_y == 4);
  CHECK(std::abs(res.mi - 2.0) < 1e-12);
}

TEST_CASE("mutual information preconditions and defaults") {
  CHECK(default_mi_bins(3) == 2);
  CHECK(default_mi_bins(33) == 5);
  CHECK(default_mi_bins(500) == 10);
  CHECK_THROWS_AS(mutual_information(AlignedPair::from_sequences({1, 2, 3}, {1, 2, 3}), 2),
                  InsufficientDataError);
}

TEST_CASE("property: MI symmetry, non-negativity and bound") {
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 10 + rng() % 300;
    const int bins = 2 + static_cast<int>(rng() % 9);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = (trial % 3) * x[i] + g(rng);
    }
    const auto strategy = trial % 2 ? BinningStrategy::EqualWidth : BinningStrategy::EqualFrequency;
    const auto pair = AlignedPair::from_sequences(x, y);
    const double xy = mutual_information(pair, bins, strategy).mi;
    const double yx = mutual_information(pair.swapped(), bins, strategy).mi;
    CHECK(std::abs(xy - yx) < 1e-12);
    CHECK(xy >= 0.0);
    CHECK(xy <= std::log2(static_cast<double>(bins)) + 1e-9);
  }
}

TEST_CASE("mic grid bound and preconditions") {
  CHECK(mic_grid_bound(200, 0.6) == 25);
  CHECK(mic_grid_bound(32, 0.6) == 8);
  CHECK(mic_grid_bound(25, 0.6) == 7);
  std::vector<double> x(24);
  std::iota(x.begin(), x.end(), 0.0);
  CHECK_THROWS_AS(mic(AlignedPair::from_sequences(x, x)), InsufficientDataError);
}

TEST_CASE("mic of a line and a constant") {
  std::vector<double> x(200), c(200, 3.0);
  std::iota(x.begin(), x.end(), 0.0);
  const auto line = mic(AlignedPair::from_sequences(x, x));
  CHECK(line.mic >= 0.99);
  CHECK(line.best_b1 * line.best_b2 <= line.grid_bound);
  CHECK(line.best_b1 == 2);
  CHECK(line.best_b2 == 2);

  const auto flat = mic(AlignedPair::from_sequences(x, c));
  CHECK(flat.degenerate);
  CHECK(flat.mic == 0.0);
}

TEST_CASE("mic of a parabola is high while pearson is near zero") {
  std::vector<double> x(200), y(200);
  for (std::size_t i = 0; i < 200; ++i) {
    x[i] = -1.0 + 2.0 * static_cast<double>(i) / 199.0;
    y[i] = x[i] * x[i];
  }
  const auto pair = AlignedPair::from_sequences(x, y);
  CHECK(mic(pair).mic > 0.9);
  CHECK(std::abs(pearson(pair).r) < 0.1);
}

TEST_CASE("mic max-entropy normalization stays in [0, 1]") {
  std::mt19937_64 rng(707);
  std::normal_distribution<double> g;
  std::vector<double> x(60), y(60);
  for (std::size_t i = 0; i < 60; ++i) {
    x[i] = g(rng);
    y[i] = std::sin(3 * x[i]) + 0.2 * g(rng);
  }
  MicOptions opt;
  opt.normalization = MicNormalization::MaxEntropy;
  const auto res = mic(AlignedPair::from_sequences(x, y), opt);
  CHECK(res.normalization == MicNormalization::MaxEntropy);
  CHECK(res.mic >= 0.0);
  CHECK(res.mic <= 1.0 + 1e-12);
}

TEST_CASE("equipartition keeps ties together") {
  const std::vector<double> v{1, 1, 1, 1, 2, 3, 4, 5};
  const auto q = detail::equipartition(v, 2);
  CHECK(q[0] == q[3]);
  CHECK(q[0] != q[7]);
  const auto all_same = detail::equipartition(std::vector<double>(6, 2.0), 3);
  CHECK(std::all_of(all_same.begin(), all_same.end(), [](int l) { return l == 0; }));
}

TEST_CASE("axis optimization equals enumeration for a fixed row partition") {
  std::mt19937_64 rng(808);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 20 + rng() % 12;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Coarse rounding on some trials exercises tied x values.
      x[i] = trial % 2 ? std::round(3 * g(rng)) : g(rng);
      y[i] = x[i] * x[i] + 0.5 * g(rng);
    }
    const int rows = 2 + trial % 3;
    const auto q = detail::equipartition(y, rows);
    const int row_count = *std::max_element(q.begin(), q.end()) + 1;
    const int max_columns = 4;
    const auto fast = detail::optimize_axis(x, q, row_count, max_columns, 0);
    const auto slow = oracle::best_mi_over_x(x, q, max_columns);
    for (int k = 2; k <= max_columns; ++k) {
      INFO("trial " << trial << " k " << k);
      CHECK(std::abs(fast.best_mi[static_cast<std::size_t>(k)] - slow[static_cast<std::size_t>(k)]) < 1e-9);
    }
  }
}

TEST_CASE("exhaustive mic equals brute-force enumeration of both axes") {
  std::mt19937_64 rng(909);
  std::normal_distribution<double> g;
  MicOptions opt;
  opt.search = MicSearch::Exhaustive;
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 25 + rng() % 6;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = trial % 2 ? std::abs(x[i]) + 0.3 * g(rng) : g(rng);
    }
    const auto pair = AlignedPair::from_sequences(x, y);
    const auto res = mic(pair, opt);
    CHECK(std::abs(res.mic - oracle::mic_brute_force(x, y, res.grid_bound)) < 1e-9);
  }
}

TEST_CASE("property: mic is invariant under monotone transforms") {
  std::mt19937_64 rng(1010);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 30 + rng() % 70;
    std::vector<double> x(n), y(n), ex(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = (trial % 4) * x[i] + g(rng);
      ex[i] = std::exp(x[i]);
    }
    const auto a = mic(AlignedPair::from_sequences(x, y));
    const auto b = mic(AlignedPair::from_sequences(ex, y));
    CHECK(std::abs(a.mic - b.mic) < 1e-9);
    CHECK(a.mic >= 0.0);
    CHECK(a.mic <= 1.0);
  }
}

TEST_CASE("characteristic matrix covers the grid bound") {
  std::vector<double> x(40), y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    x[i] = static_cast<double>(i);
    y[i] = std::cos(0.3 * x[i]);
  }
  const auto pair = AlignedPair::from_sequences(x, y);
  const auto cm = characteristic_matrix(pair);
  const int bound = mic_grid_bound(40, 0.6);
  std::size_t expected = 0;
  for (int b1 = 2; b1 <= bound / 2; ++b1)
    for (int b2 = 2; b1 * b2 <= bound; ++b2) ++expected;
  CHECK(cm.size() == expected);
  double best = 0.0;
  for (const auto& cell : cm) best = std::max(best, cell.score);
  CHECK(mic(pair).mic == best);
}
