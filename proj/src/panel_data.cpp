#include "burdenlab/panel_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <tuple>

#include "burdenlab/errors.hpp"

namespace burdenlab {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0u : 1u)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::optional<int> parse_year(std::string_view s) {
  s = trim(s);
  if (s.size() != 4) return std::nullopt;
  int year = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), year);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return year;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool is_missing(std::string_view s) {
  s = trim(s);
  return s.empty() || s == "-";
}

/// Splits text into lines, dropping CR and tracking 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) out.emplace_back(number, line);
    if (eol == std::string_view::npos) break;
    text.remove_prefix(eol + 1);
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

const std::vector<std::string_view> kMeasures = {"DALYs", "YLLs", "YLDs", "prevalence", "deaths"};

std::string_view age_label(AgeGroup g) {
  switch (g) {
    case AgeGroup::Age20to39: return "20-39";
    case AgeGroup::Age40plus: return "40+";
    case AgeGroup::AllAges: return "all";
  }
  return "all";
}

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Economic: return "Economic";
    case Category::Education: return "Education";
    case Category::Society: return "Society";
    case Category::Technology: return "Technology";
    case Category::MentalHealth: return "MentalHealth";
  }
  return "MentalHealth";
}

std::string_view to_string(AgeGroup g) {
  switch (g) {
    case AgeGroup::Age20to39: return "Age20to39";
    case AgeGroup::Age40plus: return "Age40plus";
    case AgeGroup::AllAges: return "AllAges";
  }
  return "AllAges";
}

AgeGroup parse_age_group(std::string_view label) {
  std::string key;
  for (char c : lower(trim(label)))
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_') key += c;
  if (key.ends_with("years")) key.resize(key.size() - 5);
  if (key == "20-39" || key == "20to39" || key == "age20to39") return AgeGroup::Age20to39;
  if (key == "40+" || key == "40plus" || key == "age40plus" || key == "40-plus")
    return AgeGroup::Age40plus;
  if (key == "all" || key == "allages" || key == "all-ages" || key == "age-standardized")
    return AgeGroup::AllAges;
  throw MappingError("unknown age group '" + std::string(label) + "'");
}

const std::vector<IndicatorCode>& builtin_indicators() {
  static const std::vector<IndicatorCode> kTable = {
      {"E1", "GDP", Category::Economic, "Current US$", {}},
      {"E2", "GDP per capita", Category::Economic, "Current US$", {}},
      {"E3", "Inflation, consumer prices", Category::Economic, "%", {}},
      {"E4", "Employment in industry", Category::Economic, "%", {}},
      {"E5", "Employment in services", Category::Economic, "%", {}},
      {"E6", "Employment in agriculture", Category::Economic, "%", {}},
      {"ED1", "School enrollment, primary", Category::Education, "%", {}},
      {"ED2", "School enrollment, secondary", Category::Education, "%", {}},
      {"ED3", "School enrollment, tertiary", Category::Education, "%", {}},
      {"ED4", "Government expenditure on education, total", Category::Education, "%", {}},
      {"S1", "Life expectancy at birth, total", Category::Society, "Years", {}},
      {"S2", "Unemployment, total", Category::Society, "%", {}},
      {"S3", "Prevalence of undernourishment", Category::Society, "%", {}},
      {"T1", "Individuals using the Internet", Category::Technology, "%", {}},
      {"T2", "Mobile cellular subscriptions", Category::Technology, "per 100 people", {}},
      {"T3", "Fixed broadband subscriptions", Category::Technology, "per 100 people", {}},
      {"T4", "Secure Internet servers", Category::Technology, "per 1 million people", {}},
      {"T5", "ICT goods exports", Category::Technology, "%", {}},
  };
  return kTable;
}

const IndicatorCode& indicator_lookup(std::string_view key) {
  const std::string needle = lower(trim(key));
  for (const auto& ind : builtin_indicators())
    if (lower(ind.code) == needle || lower(ind.name) == needle) return ind;

  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& ind : builtin_indicators()) {
    const std::size_t d = std::min(edit_distance(needle, lower(ind.code)),
                                   edit_distance(needle, lower(ind.name)));
    scored.emplace_back(d, ind.code);
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> nearest;
  for (std::size_t i = 0; i < scored.size() && i < 3; ++i) nearest.push_back(scored[i].second);
  throw NotFoundError(std::string(key), std::move(nearest));
}

std::optional<std::size_t> canonical_position(std::string_view code) {
  const auto& table = builtin_indicators();
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i].code == code) return i;
  return std::nullopt;
}

IndicatorCode outcome_indicator(std::string_view code) {
  IndicatorCode ind;
  ind.code = std::string(code);
  ind.name = std::string(code);
  ind.category = Category::MentalHealth;
  const auto first = code.find(':');
  const auto last = code.rfind(':');
  if (first != std::string_view::npos && last != first) {
    const std::string_view cause = code.substr(0, first);
    const std::string_view age = code.substr(first + 1, last - first - 1);
    const std::string_view measure = code.substr(last + 1);
    try {
      ind.age_group = parse_age_group(age);
    } catch (const MappingError&) {
      ind.age_group = std::nullopt;
    }
    ind.name = std::string(cause) + " " + std::string(measure) + " (" + std::string(age) + ")";
    ind.units = std::string(measure);
  }
  return ind;
}

AnnualSeries::AnnualSeries(std::vector<int> years, std::vector<std::optional<double>> values)
    : years_(std::move(years)), values_(std::move(values)) {
  if (years_.size() != values_.size())
    throw DomainError("series has " + std::to_string(years_.size()) + " years but " +
                      std::to_string(values_.size()) + " values");
  for (std::size_t i = 1; i < years_.size(); ++i)
    if (years_[i] <= years_[i - 1])
      throw DomainError("series years must be strictly increasing (" +
                        std::to_string(years_[i - 1]) + " then " + std::to_string(years_[i]) + ")");
  if (present_count() == 0) throw DomainError("series has no values");
}

std::size_t AnnualSeries::present_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); }));
}

std::optional<double> AnnualSeries::at(int year) const {
  const auto it = std::lower_bound(years_.begin(), years_.end(), year);
  if (it == years_.end() || *it != year) return std::nullopt;
  return values_[static_cast<std::size_t>(it - years_.begin())];
}

std::optional<int> AnnualSeries::first_present_year() const {
  for (std::size_t i = 0; i < years_.size(); ++i)
    if (values_[i]) return years_[i];
  return std::nullopt;
}

PanelDataset::Builder& PanelDataset::Builder::add(const std::string& region,
                                                  const IndicatorCode& indicator,
                                                  AnnualSeries series) {
  auto key = std::make_pair(region, indicator.code);
  if (cells_.contains(key))
    throw DuplicateKeyError("duplicate series for region '" + region + "', indicator '" +
                            indicator.code + "'");
  if (std::find(regions_.begin(), regions_.end(), region) == regions_.end())
    regions_.push_back(region);
  const auto known = std::find_if(indicators_.begin(), indicators_.end(),
                                  [&](const auto& i) { return i.code == indicator.code; });
  if (known == indicators_.end()) indicators_.push_back(indicator);
  cells_.emplace(std::move(key), std::move(series));
  return *this;
}

PanelDataset PanelDataset::Builder::build() && {
  PanelDataset out;
  out.regions_ = std::move(regions_);
  out.indicators_ = std::move(indicators_);
  out.cells_ = std::move(cells_);
  return out;
}

const IndicatorCode* PanelDataset::indicator(std::string_view code) const {
  for (const auto& ind : indicators_)
    if (ind.code == code) return &ind;
  return nullptr;
}

const AnnualSeries* PanelDataset::cell(std::string_view region, std::string_view code) const {
  const auto it = cells_.find({std::string(region), std::string(code)});
  return it == cells_.end() ? nullptr : &it->second;
}

std::vector<int> PanelDataset::year_span() const {
  std::set<int> years;
  for (const auto& [key, series] : cells_) years.insert(series.years().begin(), series.years().end());
  return {years.begin(), years.end()};
}

AlignedPair AlignedPair::from_sequences(std::vector<double> x, std::vector<double> y,
                                        int first_year) {
  if (x.size() != y.size())
    throw DomainError("sequences differ in length (" + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()) + ")");
  std::vector<int> years(x.size());
  for (std::size_t i = 0; i < years.size(); ++i) years[i] = first_year + static_cast<int>(i);
  return {std::move(x), std::move(y), std::move(years)};
}

AlignedPair align_pair(const AnnualSeries& a, const AnnualSeries& b, std::size_t min_overlap) {
  if (min_overlap < 3) throw DomainError("min_overlap must be at least 3");
  AlignedPair out;
  std::size_t i = 0, j = 0;
  const auto& ya = a.years();
  const auto& yb = b.years();
  while (i < ya.size() && j < yb.size()) {
    if (ya[i] < yb[j]) {
      ++i;
    } else if (yb[j] < ya[i]) {
      ++j;
    } else {
      if (a.values()[i] && b.values()[j]) {
        out.x.push_back(*a.values()[i]);
        out.y.push_back(*b.values()[j]);
        out.years.push_back(ya[i]);
      }
      ++i;
      ++j;
    }
  }
  if (out.n() < min_overlap) throw InsufficientOverlapError(out.n(), min_overlap);
  return out;
}

std::vector<std::string> split_csv_record(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  for (auto& f : fields) f = std::string(trim(f));
  return fields;
}

PanelDataset parse_wdi_wide(std::string_view text, std::string_view default_region) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError("no header", 1);

  const auto [header_line, header_text] = lines.front();
  const auto header = split_csv_record(header_text);
  if (header.size() < 2 || parse_year(header[0]))
    throw ParseError("malformed header: expected an indicator column followed by year columns",
                     header_line);
  const bool has_region = !parse_year(header[1]).has_value();
  const std::size_t first_year_col = has_region ? 2 : 1;
  if (header.size() <= first_year_col)
    throw ParseError("malformed header: no year columns", header_line);

  std::vector<int> years;
  for (std::size_t c = first_year_col; c < header.size(); ++c) {
    const auto year = parse_year(header[c]);
    if (!year) throw ParseError("malformed header: '" + header[c] + "' is not a year", header_line, c + 1);
    if (!years.empty() && *year <= years.back())
      throw ParseError("malformed header: years must be strictly increasing", header_line, c + 1);
    years.push_back(*year);
  }

  PanelDataset::Builder builder;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto [number, line] = lines[li];
    const auto fields = split_csv_record(line);
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       number);
    if (fields[0].empty()) throw ParseError("empty indicator key", number, 1);

    IndicatorCode indicator;
    try {
      indicator = indicator_lookup(fields[0]);
    } catch (const NotFoundError&) {
      indicator = outcome_indicator(fields[0]);
    }
    std::string region = has_region ? fields[1] : std::string();
    if (region.empty()) region = std::string(default_region);

    std::vector<std::optional<double>> values;
    values.reserve(years.size());
    for (std::size_t c = first_year_col; c < fields.size(); ++c) {
      if (is_missing(fields[c])) {
        values.emplace_back();
        continue;
      }
      const auto v = parse_number(fields[c]);
      if (!v)
        throw ParseError("non-numeric value '" + fields[c] + "' for " + fields[0] + " in " +
                             std::to_string(years[c - first_year_col]),
                         number, c + 1);
      values.emplace_back(*v);
    }
    try {
      builder.add(region, indicator, AnnualSeries(years, std::move(values)));
    } catch (const DomainError& e) {
      throw ParseError(fields[0] + ": " + e.what(), number);
    }
  }
  return std::move(builder).build();
}

PanelDataset parse_gbd_long(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError("no header", 1);
  const std::vector<std::string> expected = {"location", "age_group", "cause",
                                             "measure",  "year",      "value"};
  {
    const auto header = split_csv_record(lines.front().second);
    std::vector<std::string> got;
    for (const auto& h : header) got.push_back(lower(h));
    if (got != expected)
      throw ParseError("malformed header: expected location,age_group,cause,measure,year,value",
                       lines.front().first);
  }

  // (location, code) -> year -> value, with first-appearance order kept separately.
  struct Pending {
    std::string location;
    IndicatorCode indicator;
    std::map<int, double> points;
  };
  std::vector<Pending> pending;
  std::map<std::pair<std::string, std::string>, std::size_t> index;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto [number, line] = lines[li];
    const auto f = split_csv_record(line);
    if (f.size() != expected.size())
      throw ParseError("expected 6 fields, found " + std::to_string(f.size()), number);
    const AgeGroup age = parse_age_group(f[1]);
    if (std::find(kMeasures.begin(), kMeasures.end(), f[3]) == kMeasures.end())
      throw MappingError("line " + std::to_string(number) + ": unknown measure '" + f[3] + "'");
    const auto year = parse_year(f[4]);
    if (!year) throw ParseError("invalid year '" + f[4] + "'", number, 5);
    const auto value = parse_number(f[5]);
    if (!value) throw ParseError("non-numeric value '" + f[5] + "'", number, 6);

    const std::string code = f[2] + ":" + std::string(age_label(age)) + ":" + f[3];
    auto key = std::make_pair(f[0], code);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, pending.size()).first;
      pending.push_back({f[0], outcome_indicator(code), {}});
    }
    if (!pending[it->second].points.emplace(*year, *value).second)
      throw DuplicateKeyError("line " + std::to_string(number) + ": duplicate record for " + f[0] +
                              ", " + f[2] + ", " + f[1] + ", " + f[3] + ", " + f[4]);
  }

  PanelDataset::Builder builder;
  for (auto& p : pending) {
    std::vector<int> years;
    std::vector<std::optional<double>> values;
    for (const auto& [y, v] : p.points) {
      years.push_back(y);
      values.emplace_back(v);
    }
    builder.add(p.location, p.indicator, AnnualSeries(std::move(years), std::move(values)));
  }
  return std::move(builder).build();
}

std::string write_wdi_wide(const PanelDataset& panel) {
  const auto years = panel.year_span();
  std::string out = "code,region";
  for (int y : years) out += "," + std::to_string(y);
  out += '\n';
  for (const auto& ind : panel.indicators()) {
    for (const auto& region : panel.regions()) {
      const auto* series = panel.cell(region, ind.code);
      if (series == nullptr) continue;
      out += quote_if_needed(ind.code) + "," + quote_if_needed(region);
      for (int y : years) {
        const auto v = series->at(y);
        out += ",";
        out += v ? format_number(*v) : "-";
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace burdenlab
