#pragma once

#include <map>
#include <string>
#include <string_view>

namespace burdenlab {

/// Age bands are opaque labels; nothing ever computes with band boundaries.
using AgeBand = std::string;
using BandValues = std::map<AgeBand, double>;

/// Standard life expectancy per age band. All entries must be non-negative.
class LifeTable {
 public:
  explicit LifeTable(BandValues entries);
  const BandValues& entries() const noexcept { return entries_; }

 private:
  BandValues entries_;
};

/// Disability weight per (condition, band), each in [0, 1].
class DisabilityWeights {
 public:
  using Key = std::pair<std::string, AgeBand>;
  explicit DisabilityWeights(std::map<Key, double> entries);
  const std::map<Key, double>& entries() const noexcept { return entries_; }

 private:
  std::map<Key, double> entries_;
};

struct BurdenSummary {
  double yll = 0.0;
  double yld = 0.0;
  double daly = 0.0;
};

/// Sum over bands of deaths x standard life expectancy.
double compute_yll(const BandValues& deaths, const LifeTable& table);

/// Sum over bands of prevalence x disability weight for `condition`.
double compute_yld(const BandValues& prevalence, const DisabilityWeights& weights,
                   std::string_view condition);

BurdenSummary compute_daly(double yll, double yld);

/// Direct age standardization. `weights` must cover every band in `rates`
/// and sum to 1 within 1e-9.
double age_standardize(const BandValues& rates, const BandValues& weights);

/// "band,value" CSV, header optional.
BandValues parse_band_values(std::string_view csv);
/// "condition,band,value" CSV, header optional.
DisabilityWeights parse_disability_weights(std::string_view csv);

}  // namespace burdenlab
