#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "burdenlab/info_stats.hpp"
#include "burdenlab/linear_stats.hpp"
#include "burdenlab/panel_data.hpp"
#include "burdenlab/temporal_stats.hpp"

namespace burdenlab {

enum class Method { Pearson, MutualInformation, Granger, Mic };
std::string_view to_string(Method m);
Method parse_method(std::string_view s);

enum class GrangerDirection { IndicatorToOutcome, OutcomeToIndicator };

struct BatteryConfig {
  std::vector<Method> methods = {Method::Pearson, Method::MutualInformation, Method::Granger,
                                 Method::Mic};
  std::size_t min_overlap = kDefaultMinOverlap;
  std::size_t max_lag = 5;
  bool difference_first = false;
  GrangerDirection granger_direction = GrangerDirection::IndicatorToOutcome;
  /// 0 selects default_mi_bins(n) per cell.
  int mi_bins = 0;
  BinningStrategy mi_strategy = BinningStrategy::EqualFrequency;
  MicOptions mic;
  /// Empty selects every MentalHealth code in the dataset.
  std::vector<std::string> outcomes;
  /// Empty selects every built-in indicator present in the dataset.
  std::vector<std::string> indicators;
  /// Worker threads for cell evaluation; results never depend on it.
  std::size_t threads = 1;
};

/// Parses the key = value configuration file. Unknown keys and malformed
/// values raise ConfigError.
BatteryConfig parse_battery_config(std::string_view text);

/// Canonical key = value rendering; parse_battery_config reads it back.
std::string format_battery_config(const BatteryConfig& config);

using CellResult = std::variant<PearsonResult, MutualInfoResult, LagSweep, MicResult>;

struct CellSkip {
  /// Machine-readable: insufficient_overlap, degenerate_input,
  /// non_contiguous_years, insufficient_data, missing_series.
  std::string reason;
  std::string detail;
};

struct MatrixCell {
  /// Aligned sample size; 0 when alignment itself failed.
  std::size_t n = 0;
  std::optional<CellResult> result;
  std::optional<CellSkip> skip;
};

struct ResultMatrix {
  Method method = Method::Pearson;
  AgeGroup age_group = AgeGroup::AllAges;
  std::string outcome;
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  /// Row-major, rows.size() x cols.size().
  std::vector<MatrixCell> cells;

  const MatrixCell& at(std::size_t row, std::size_t col) const {
    return cells.at(row * cols.size() + col);
  }
  std::size_t computed_count() const;
  std::size_t skip_count() const;
};

/// Validates the config against the dataset (ConfigError before any
/// computation), then builds one matrix per method x outcome, in config order.
std::vector<ResultMatrix> run_battery(const PanelDataset& dataset, const BatteryConfig& config);

struct LagSummaryRow {
  Category category = Category::Economic;
  std::string outcome;
  /// best lag -> number of cells.
  std::map<std::size_t, std::size_t> counts;

  /// Most frequent lag; the smallest on ties.
  std::optional<std::size_t> modal_lag() const;
};

/// Best-lag distribution per (indicator category, outcome). Throws TypeError
/// for non-Granger matrices.
std::vector<LagSummaryRow> summarize_lags(const std::vector<ResultMatrix>& matrices);

}  // namespace burdenlab
