#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace burdenlab {

enum class Category { Economic, Education, Society, Technology, MentalHealth };
enum class AgeGroup { Age20to39, Age40plus, AllAges };

std::string_view to_string(Category c);
std::string_view to_string(AgeGroup g);

/// Maps free-text GBD age labels ("20-39", "40+ years", "All ages", ...) onto
/// an AgeGroup. Throws MappingError for anything else.
AgeGroup parse_age_group(std::string_view label);

struct IndicatorCode {
  std::string code;
  std::string name;
  Category category = Category::MentalHealth;
  std::string units;
  /// Set only for stratified outcome codes.
  std::optional<AgeGroup> age_group;

  friend bool operator==(const IndicatorCode&, const IndicatorCode&) = default;
};

/// The 18 socioeconomic indicators E1-E6, ED1-ED4, S1-S3, T1-T5 in canonical order.
const std::vector<IndicatorCode>& builtin_indicators();

/// Resolves a code ("E2") or a full name ("GDP per capita"), case-insensitively.
/// Throws NotFoundError carrying the nearest codes/names.
const IndicatorCode& indicator_lookup(std::string_view key);

/// Position of a built-in code in the canonical order, if it is one.
std::optional<std::size_t> canonical_position(std::string_view code);

/// Outcome codes have the form "<cause>:<age>:<measure>", e.g.
/// "depressive:20-39:DALYs". Returns the metadata such a code implies.
IndicatorCode outcome_indicator(std::string_view code);

/// An annual series with optional values. Years are strictly increasing and
/// at least one value is present; the constructor enforces both.
class AnnualSeries {
 public:
  AnnualSeries(std::vector<int> years, std::vector<std::optional<double>> values);

  const std::vector<int>& years() const noexcept { return years_; }
  const std::vector<std::optional<double>>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return years_.size(); }
  std::size_t present_count() const noexcept;
  std::optional<double> at(int year) const;
  std::optional<int> first_present_year() const;

  friend bool operator==(const AnnualSeries&, const AnnualSeries&) = default;

 private:
  std::vector<int> years_;
  std::vector<std::optional<double>> values_;
};

/// Regions x indicators x years. Immutable once built; read it from any
/// number of threads.
class PanelDataset {
 public:
  class Builder {
   public:
    /// Throws DuplicateKeyError if (region, code) was already added.
    Builder& add(const std::string& region, const IndicatorCode& indicator, AnnualSeries series);
    PanelDataset build() &&;

   private:
    std::vector<std::string> regions_;
    std::vector<IndicatorCode> indicators_;
    std::map<std::pair<std::string, std::string>, AnnualSeries> cells_;
  };

  PanelDataset() = default;

  const std::vector<std::string>& regions() const noexcept { return regions_; }
  const std::vector<IndicatorCode>& indicators() const noexcept { return indicators_; }
  const IndicatorCode* indicator(std::string_view code) const;
  const AnnualSeries* cell(std::string_view region, std::string_view code) const;
  std::size_t cell_count() const noexcept { return cells_.size(); }

  /// All years that appear in any cell, ascending.
  std::vector<int> year_span() const;

  friend bool operator==(const PanelDataset&, const PanelDataset&) = default;

 private:
  std::vector<std::string> regions_;
  std::vector<IndicatorCode> indicators_;
  std::map<std::pair<std::string, std::string>, AnnualSeries> cells_;
};

/// Two gap-free sequences over the years where both inputs have values.
struct AlignedPair {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<int> years;

  std::size_t n() const noexcept { return x.size(); }

  /// Wraps raw sequences, assigning consecutive years starting at `first_year`.
  static AlignedPair from_sequences(std::vector<double> x, std::vector<double> y,
                                    int first_year = 0);
  AlignedPair swapped() const { return {y, x, years}; }
};

inline constexpr std::size_t kDefaultMinOverlap = 10;

/// Pairwise deletion: keeps the years where both series are populated.
/// Throws InsufficientOverlapError when fewer than `min_overlap` remain.
AlignedPair align_pair(const AnnualSeries& a, const AnnualSeries& b,
                       std::size_t min_overlap = kDefaultMinOverlap);

/// WDI-style wide CSV: indicator key, optional region column, then one
/// column per four-digit year. "-" or an empty cell marks a missing value.
PanelDataset parse_wdi_wide(std::string_view text, std::string_view default_region = "global");

/// GBD-style long CSV with header location,age_group,cause,measure,year,value.
PanelDataset parse_gbd_long(std::string_view text);

/// Writes the panel in the wide layout accepted by parse_wdi_wide (always
/// with a region column).
std::string write_wdi_wide(const PanelDataset& panel);

/// The published annual indicator table (15 indicators, 1991-2023) as wide CSV
/// under the "global" region. GDP is in trillion US$, GDP per capita in
/// thousand US$.
std::string_view table3_fixture_csv();

/// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> split_csv_record(std::string_view line);

}  // namespace burdenlab
