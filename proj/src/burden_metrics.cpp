#include "burdenlab/burden_metrics.hpp"

#include <charconv>
#include <cmath>

#include "burdenlab/errors.hpp"
#include "burdenlab/panel_data.hpp"

namespace burdenlab {

namespace {

void require_count(double v, const std::string& what) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw DomainError(what + " must be a finite non-negative number");
}

std::optional<double> to_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Reads fixed-width CSV records, skipping '#' comments and a non-numeric
/// header line before the first record.
std::vector<std::vector<std::string>> read_records(std::string_view csv, std::size_t width) {
  std::vector<std::vector<std::string>> rows;
  std::size_t number = 0;
  bool header_allowed = true;
  while (!csv.empty()) {
    ++number;
    const auto eol = csv.find('\n');
    std::string_view line = csv.substr(0, eol);
    csv.remove_prefix(eol == std::string_view::npos ? csv.size() : eol + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    auto fields = split_csv_record(line);
    if (fields.size() != width)
      throw ParseError("expected " + std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()),
                       number);
    if (!to_double(fields.back())) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw ParseError("non-numeric value '" + fields.back() + "'", number, width);
    }
    header_allowed = false;
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

LifeTable::LifeTable(BandValues entries) : entries_(std::move(entries)) {
  for (const auto& [band, years] : entries_) require_count(years, "life expectancy for " + band);
}

DisabilityWeights::DisabilityWeights(std::map<Key, double> entries) : entries_(std::move(entries)) {
  for (const auto& [key, w] : entries_)
    if (!(w >= 0.0 && w <= 1.0))
      throw DomainError("disability weight for " + key.first + "/" + key.second +
                        " is outside [0, 1]");
}

double compute_yll(const BandValues& deaths, const LifeTable& table) {
  double total = 0.0;
  for (const auto& [band, count] : deaths) {
    require_count(count, "deaths in " + band);
    const auto it = table.entries().find(band);
    if (it == table.entries().end()) throw MissingBandError(band);
    total += count * it->second;
  }
  return total;
}

double compute_yld(const BandValues& prevalence, const DisabilityWeights& weights,
                   std::string_view condition) {
  double total = 0.0;
  for (const auto& [band, count] : prevalence) {
    require_count(count, "prevalence in " + band);
    const auto it = weights.entries().find({std::string(condition), band});
    if (it == weights.entries().end()) throw MissingWeightError(std::string(condition), band);
    total += count * it->second;
  }
  return total;
}

BurdenSummary compute_daly(double yll, double yld) {
  require_count(yll, "YLL");
  require_count(yld, "YLD");
  return {yll, yld, yll + yld};
}

double age_standardize(const BandValues& rates, const BandValues& weights) {
  double sum = 0.0;
  for (const auto& [band, w] : weights) {
    if (!(w >= 0.0)) throw DomainError("negative standard-population weight for " + band);
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw NormalizationError(sum);
  double total = 0.0;
  for (const auto& [band, rate] : rates) {
    const auto it = weights.find(band);
    if (it == weights.end()) throw MissingBandError(band);
    total += rate * it->second;
  }
  return total;
}

BandValues parse_band_values(std::string_view csv) {
  BandValues out;
  for (const auto& row : read_records(csv, 2))
    if (!out.emplace(row[0], *to_double(row[1])).second)
      throw DuplicateKeyError("duplicate age band '" + row[0] + "'");
  return out;
}

DisabilityWeights parse_disability_weights(std::string_view csv) {
  std::map<DisabilityWeights::Key, double> out;
  for (const auto& row : read_records(csv, 3))
    if (!out.emplace(DisabilityWeights::Key{row[0], row[1]}, *to_double(row[2])).second)
      throw DuplicateKeyError("duplicate weight for " + row[0] + "/" + row[1]);
  return DisabilityWeights(std::move(out));
}

}  // namespace burdenlab
