#include <cmath>
#include <random>

#include "burdenlab/battery.hpp"
#include "burdenlab/errors.hpp"
#include "burdenlab/fixture.hpp"
#include "burdenlab/reporting.hpp"
#include "doctest.h"

using namespace burdenlab;

namespace {

PanelDataset fixture_panel() { return parse_wdi_wide(fixture_panel_csv(true)); }

AnnualSeries series(int first, const std::vector<double>& values) {
  std::vector<int> years(values.size());
  std::vector<std::optional<double>> v(values.begin(), values.end());
  for (std::size_t i = 0; i < values.size(); ++i) years[i] = first + static_cast<int>(i);
  return {years, v};
}

double scalar(const ResultMatrix& m, std::size_t col) {
  return *cell_scalar(m.method, m.at(0, col));
}

}  // namespace

TEST_CASE("fixture battery shapes") {
  const auto panel = fixture_panel();
  const auto matrices = run_battery(panel, BatteryConfig{});
  REQUIRE(matrices.size() == 8);
  for (const auto& m : matrices) {
    CHECK(m.rows.size() == 1);
    CHECK(m.cols.size() == 15);
    CHECK(m.cells.size() == 15);
    CHECK(m.computed_count() + m.skip_count() == 15);
    for (const auto& c : m.cells) CHECK(c.result.has_value() != c.skip.has_value());
  }
  CHECK(matrices[0].method == Method::Pearson);
  CHECK(matrices[0].age_group == AgeGroup::Age20to39);
  CHECK(matrices[1].age_group == AgeGroup::Age40plus);
  CHECK(matrices[0].cols.front() == "E1");
  CHECK(matrices[0].cols.back() == "T5");
}

TEST_CASE("short overlaps become skips") {
  const auto panel = fixture_panel();
  BatteryConfig cfg;
  cfg.methods = {Method::Pearson};
  cfg.min_overlap = 15;
  const auto m = run_battery(panel, cfg).front();
  // T4 is populated from 2010; the outcomes end in 2021.
  const auto t4 = static_cast<std::size_t>(
      std::find(m.cols.begin(), m.cols.end(), "T4") - m.cols.begin());
  REQUIRE(m.at(0, t4).skip.has_value());
  CHECK(m.at(0, t4).skip->reason == "insufficient_overlap");
  CHECK(m.at(0, t4).n == 0);
}

TEST_CASE("mic skips short cells with a reason") {
  BatteryConfig cfg;
  cfg.methods = {Method::Mic};
  const auto m = run_battery(fixture_panel(), cfg).front();
  CHECK(m.skip_count() > 0);
  for (const auto& c : m.cells)
    if (c.skip) CHECK(c.skip->reason == "insufficient_data");
}

TEST_CASE("outcome and age-group combinatorics") {
  PanelDataset::Builder b;
  std::vector<double> vals(20);
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::sin(0.7 * static_cast<double>(i)) + 0.1 * static_cast<double>(i);
  b.add("R1", indicator_lookup("E1"), series(2000, vals));
  for (const char* code : {"depressive:20-39:DALYs", "depressive:40+:DALYs", "anxiety:20-39:DALYs",
                           "anxiety:40+:DALYs"}) {
    std::vector<double> o(vals);
    for (auto& v : o) v = v * v + 1.0;
    b.add("R1", outcome_indicator(code), series(2000, o));
  }
  const auto panel = std::move(b).build();
  BatteryConfig cfg;
  cfg.methods = {Method::MutualInformation};
  const auto ms = run_battery(panel, cfg);
  CHECK(ms.size() == 4);
  CHECK(ms[2].outcome == "anxiety:20-39:DALYs");
  CHECK(ms[3].age_group == AgeGroup::Age40plus);
}

TEST_CASE("config validation happens before computation") {
  const auto panel = fixture_panel();
  BatteryConfig cfg;
  cfg.indicators = {"Z9"};
  CHECK_THROWS_AS(run_battery(panel, cfg), ConfigError);
  cfg = {};
  cfg.outcomes = {"nothing:40+:DALYs"};
  CHECK_THROWS_AS(run_battery(panel, cfg), ConfigError);
  cfg = {};
  cfg.methods.clear();
  CHECK_THROWS_AS(run_battery(panel, cfg), ConfigError);
  CHECK_THROWS_AS(run_battery(parse_wdi_wide(table3_fixture_csv()), BatteryConfig{}), ConfigError);
}

TEST_CASE("config file parsing") {
  const auto cfg = parse_battery_config(
      "# comment\nmethods = granger, mic\nmax_lag = 3\ndifference_first = true\n"
      "granger_direction = outcome_to_indicator\nmi_bins = 6\nmic_normalization = max_entropy\n"
      "indicators = E1,E2\nthreads = 4\n");
  CHECK(cfg.methods == std::vector<Method>{Method::Granger, Method::Mic});
  CHECK(cfg.max_lag == 3);
  CHECK(cfg.difference_first);
  CHECK(cfg.granger_direction == GrangerDirection::OutcomeToIndicator);
  CHECK(cfg.mi_bins == 6);
  CHECK(cfg.mic.normalization == MicNormalization::MaxEntropy);
  CHECK(cfg.indicators == std::vector<std::string>{"E1", "E2"});
  CHECK(cfg.threads == 4);

  const auto again = parse_battery_config(format_battery_config(cfg));
  CHECK(format_battery_config(again) == format_battery_config(cfg));

  CHECK_THROWS_AS(parse_battery_config("colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_battery_config("methods = spearman\n"), ConfigError);
  CHECK_THROWS_AS(parse_battery_config("max_lag = two\n"), ConfigError);
  CHECK_THROWS_AS(parse_battery_config("mi_bins = 3x\n"), ConfigError);
}

TEST_CASE("results do not depend on thread count") {
  const auto panel = fixture_panel();
  BatteryConfig one, many;
  many.threads = 6;
  ExportBundle a{run_battery(panel, one), one, dataset_fingerprint(panel)};
  ExportBundle b{run_battery(panel, many), one, dataset_fingerprint(panel)};
  CHECK(export_json(a) == export_json(b));
}

TEST_CASE("removing a method leaves the other matrices untouched") {
  const auto panel = fixture_panel();
  BatteryConfig all, fewer;
  fewer.methods = {Method::Pearson, Method::Granger, Method::Mic};
  const auto full = run_battery(panel, all);
  const auto part = run_battery(panel, fewer);
  REQUIRE(part.size() == 6);
  for (const auto& m : part) {
    const auto it = std::find_if(full.begin(), full.end(), [&](const ResultMatrix& f) {
      return f.method == m.method && f.outcome == m.outcome;
    });
    REQUIRE(it != full.end());
    CHECK(export_csv(*it) == export_csv(m));
  }
}

TEST_CASE("pearson and mic are symmetric in the outcome and indicator roles") {
  std::mt19937_64 rng(1515);
  std::normal_distribution<double> g;
  std::vector<double> a(40), b(40);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = g(rng);
    b[i] = a[i] * a[i] + 0.5 * g(rng);
  }
  const char* outcome = "synthetic:all:DALYs";
  auto build = [&](const std::vector<double>& ind, const std::vector<double>& out) {
    PanelDataset::Builder bld;
    bld.add("R", indicator_lookup("E1"), series(1980, ind));
    bld.add("R", outcome_indicator(outcome), series(1980, out));
    return std::move(bld).build();
  };
  BatteryConfig cfg;
  cfg.methods = {Method::Pearson, Method::Mic, Method::Granger};
  const auto fwd = run_battery(build(a, b), cfg);
  const auto rev = run_battery(build(b, a), cfg);
  CHECK(std::abs(scalar(fwd[0], 0) - scalar(rev[0], 0)) < 1e-12);
  CHECK(std::abs(scalar(fwd[1], 0) - scalar(rev[1], 0)) < 1e-12);
  CHECK(scalar(fwd[2], 0) != scalar(rev[2], 0));
}

TEST_CASE("granger direction flag swaps the roles") {
  const auto panel = fixture_panel();
  BatteryConfig fwd, rev;
  fwd.methods = rev.methods = {Method::Granger};
  rev.granger_direction = GrangerDirection::OutcomeToIndicator;
  const auto a = run_battery(panel, fwd).front();
  const auto b = run_battery(panel, rev).front();
  CHECK(export_csv(a) != export_csv(b));
}

TEST_CASE("differencing is applied when requested") {
  const auto panel = fixture_panel();
  BatteryConfig cfg;
  cfg.methods = {Method::Granger};
  cfg.difference_first = true;
  const auto m = run_battery(panel, cfg).front();
  const auto& c = m.at(0, 0);
  REQUIRE(c.result.has_value());
  const auto& sweep = std::get<LagSweep>(*c.result);
  CHECK(sweep.results.front().n_eff == c.n - 2);
}

TEST_CASE("summarize_lags") {
  SUBCASE("counts") {
    ResultMatrix m;
    m.method = Method::Granger;
    m.outcome = "dep:all:DALYs";
    m.rows = {"A", "B", "C"};
    m.cols = {"E1"};
    for (std::size_t lag : {1u, 2u, 2u}) {
      LagSweep s;
      for (std::size_t l = 1; l <= 2; ++l) {
        GrangerResult r;
        r.lag = l;
        r.p_value = l == lag ? 0.01 : 0.5;
        s.results.push_back(r);
      }
      s.best_index = lag - 1;
      MatrixCell cell;
      cell.n = 30;
      cell.result = s;
      m.cells.push_back(cell);
    }
    const auto rows = summarize_lags({m});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].category == Category::Economic);
    CHECK(rows[0].counts == std::map<std::size_t, std::size_t>{{1, 1}, {2, 2}});
    CHECK(rows[0].modal_lag() == 2u);
  }
  SUBCASE("empty input") { CHECK(summarize_lags({}).empty()); }
  SUBCASE("wrong method") {
    ResultMatrix m;
    m.method = Method::Pearson;
    CHECK_THROWS_AS(summarize_lags({m}), TypeError);
  }
}

TEST_CASE("planted lag-3 coupling for education indicators") {
  std::mt19937_64 rng(1616);
  std::normal_distribution<double> g;
  const std::size_t n = 80;
  PanelDataset::Builder b;
  const char* outcome = "synthetic:20-39:DALYs";
  for (int r = 0; r < 6; ++r) {
    const std::string region = "R" + std::to_string(r);
    std::vector<std::vector<double>> ed(4, std::vector<double>(n));
    std::vector<double> e1(n);
    for (auto& s : ed)
      for (auto& v : s) v = g(rng);
    for (auto& v : e1) v = g(rng);
    std::vector<double> y(n, 0.0);
    for (std::size_t t = 3; t < n; ++t) {
      double drive = 0.0;
      for (const auto& s : ed) drive += s[t - 3];
      y[t] = 0.4 * y[t - 1] + 0.6 * drive + 0.2 * g(rng);
    }
    for (int k = 0; k < 4; ++k)
      b.add(region, indicator_lookup("ED" + std::to_string(k + 1)), series(1940, ed[static_cast<std::size_t>(k)]));
    b.add(region, indicator_lookup("E1"), series(1940, e1));
    b.add(region, outcome_indicator(outcome), series(1940, y));
  }
  BatteryConfig cfg;
  cfg.methods = {Method::Granger};
  const auto rows = summarize_lags(run_battery(std::move(b).build(), cfg));
  const auto it = std::find_if(rows.begin(), rows.end(),
                               [](const LagSummaryRow& r) { return r.category == Category::Education; });
  REQUIRE(it != rows.end());
  CHECK(it->modal_lag() == 3u);
  std::size_t total = 0;
  for (const auto& [lag, count] : it->counts) total += count;
  CHECK(total == 24);
}
