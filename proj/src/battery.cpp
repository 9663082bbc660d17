#include "burdenlab/battery.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include <boost/program_options.hpp>

#include "burdenlab/errors.hpp"

namespace burdenlab {

namespace po = boost::program_options;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

struct WorkItem {
  std::size_t matrix;
  std::size_t cell;
};

struct Plan {
  std::vector<std::string> outcomes;
  std::vector<std::string> indicators;
};

Plan plan_battery(const PanelDataset& dataset, const BatteryConfig& config) {
  if (config.methods.empty()) throw ConfigError("no methods selected");
  if (config.min_overlap < 3) throw ConfigError("min_overlap must be at least 3");
  if (config.max_lag < 1) throw ConfigError("max_lag must be at least 1");
  if (config.mi_bins != 0 && config.mi_bins < 2) throw ConfigError("mi_bins must be 0 (auto) or >= 2");
  if (!(config.mic.alpha > 0.0 && config.mic.alpha <= 1.0))
    throw ConfigError("mic_alpha must lie in (0, 1]");
  if (config.mic.clumps < 1) throw ConfigError("mic_clumps must be at least 1");

  Plan plan;
  for (const auto& code : config.outcomes)
    if (dataset.indicator(code) == nullptr)
      throw ConfigError("outcome code '" + code + "' is not in the dataset");
  for (const auto& code : config.indicators)
    if (dataset.indicator(code) == nullptr)
      throw ConfigError("indicator code '" + code + "' is not in the dataset");

  plan.outcomes = config.outcomes;
  if (plan.outcomes.empty())
    for (const auto& ind : dataset.indicators())
      if (ind.category == Category::MentalHealth) plan.outcomes.push_back(ind.code);

  plan.indicators = config.indicators;
  if (plan.indicators.empty())
    for (const auto& ind : dataset.indicators())
      if (canonical_position(ind.code)) plan.indicators.push_back(ind.code);
  // Canonical indicator order first, anything else after in the given order.
  std::stable_sort(plan.indicators.begin(), plan.indicators.end(),
                   [](const std::string& a, const std::string& b) {
                     const auto pa = canonical_position(a);
                     const auto pb = canonical_position(b);
                     if (pa && pb) return *pa < *pb;
                     return pa.has_value() && !pb.has_value();
                   });

  if (plan.outcomes.empty()) throw ConfigError("dataset has no outcome series to analyze");
  if (plan.indicators.empty()) throw ConfigError("dataset has no indicator series to analyze");
  return plan;
}

CellResult evaluate(Method method, const AlignedPair& pair, const BatteryConfig& config) {
  switch (method) {
    case Method::Pearson:
      return pearson(pair);
    case Method::MutualInformation: {
      const int bins = config.mi_bins > 0 ? config.mi_bins : default_mi_bins(pair.n());
      return mutual_information(pair, bins, config.mi_strategy);
    }
    case Method::Granger: {
      const AlignedPair directed =
          config.granger_direction == GrangerDirection::IndicatorToOutcome ? pair : pair.swapped();
      if (!config.difference_first) return lag_sweep(directed, config.max_lag);
      for (std::size_t i = 1; i < directed.years.size(); ++i)
        if (directed.years[i] != directed.years[i - 1] + 1)
          throw NonContiguousError("gap before " + std::to_string(directed.years[i]));
      return lag_sweep(first_difference(directed), config.max_lag);
    }
    case Method::Mic: {
      auto result = mic(pair, config.mic);
      if (result.degenerate) throw DegenerateInputError("constant axis; mic is 0 by definition");
      return result;
    }
  }
  throw ConfigError("unknown method");
}

MatrixCell compute_cell(const PanelDataset& dataset, const ResultMatrix& matrix, std::size_t row,
                        std::size_t col, const BatteryConfig& config) {
  MatrixCell cell;
  const auto& region = matrix.rows[row];
  const auto* outcome = dataset.cell(region, matrix.outcome);
  const auto* indicator = dataset.cell(region, matrix.cols[col]);
  if (outcome == nullptr || indicator == nullptr) {
    cell.skip = CellSkip{"missing_series", "no " + (outcome == nullptr ? matrix.outcome : matrix.cols[col]) +
                                               " series for region " + region};
    return cell;
  }
  try {
    // x = indicator, y = outcome.
    const AlignedPair pair = align_pair(*indicator, *outcome, config.min_overlap);
    cell.n = pair.n();
    cell.result = evaluate(matrix.method, pair, config);
  } catch (const Error& e) {
    std::string reason = e.kind();
    if (reason == "singular_design") reason = "degenerate_input";
    cell.skip = CellSkip{reason, e.what()};
    cell.result.reset();
  }
  return cell;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Pearson: return "pearson";
    case Method::MutualInformation: return "mutual_information";
    case Method::Granger: return "granger";
    case Method::Mic: return "mic";
  }
  return "pearson";
}

Method parse_method(std::string_view s) {
  if (s == "pearson") return Method::Pearson;
  if (s == "mutual_information" || s == "mi") return Method::MutualInformation;
  if (s == "granger") return Method::Granger;
  if (s == "mic") return Method::Mic;
  throw ConfigError("unknown method '" + std::string(s) + "'");
}

std::size_t ResultMatrix::computed_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.result.has_value(); }));
}

std::size_t ResultMatrix::skip_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.skip.has_value(); }));
}

BatteryConfig parse_battery_config(std::string_view text) {
  po::options_description desc;
  desc.add_options()
      ("methods", po::value<std::string>())
      ("min_overlap", po::value<std::size_t>())
      ("max_lag", po::value<std::size_t>())
      ("difference_first", po::value<bool>())
      ("granger_direction", po::value<std::string>())
      ("mi_bins", po::value<std::string>())
      ("mi_strategy", po::value<std::string>())
      ("mic_alpha", po::value<double>())
      ("mic_clumps", po::value<int>())
      ("mic_normalization", po::value<std::string>())
      ("outcomes", po::value<std::string>())
      ("indicators", po::value<std::string>())
      ("threads", po::value<std::size_t>());

  po::variables_map vm;
  try {
    std::istringstream in{std::string(text)};
    po::store(po::parse_config_file(in, desc, false), vm);
    po::notify(vm);
  } catch (const po::error& e) {
    throw ConfigError(e.what());
  }

  BatteryConfig config;
  try {
    if (vm.count("methods")) {
      config.methods.clear();
      for (const auto& m : split_list(vm["methods"].as<std::string>())) {
        const Method method = parse_method(m);
        if (std::find(config.methods.begin(), config.methods.end(), method) != config.methods.end())
          throw ConfigError("method '" + m + "' listed twice");
        config.methods.push_back(method);
      }
    }
    if (vm.count("min_overlap")) config.min_overlap = vm["min_overlap"].as<std::size_t>();
    if (vm.count("max_lag")) config.max_lag = vm["max_lag"].as<std::size_t>();
    if (vm.count("difference_first")) config.difference_first = vm["difference_first"].as<bool>();
    if (vm.count("granger_direction")) {
      const auto d = vm["granger_direction"].as<std::string>();
      if (d == "indicator_to_outcome")
        config.granger_direction = GrangerDirection::IndicatorToOutcome;
      else if (d == "outcome_to_indicator")
        config.granger_direction = GrangerDirection::OutcomeToIndicator;
      else
        throw ConfigError("granger_direction must be indicator_to_outcome or outcome_to_indicator");
    }
    if (vm.count("mi_bins")) {
      const auto b = vm["mi_bins"].as<std::string>();
      if (b == "auto") {
        config.mi_bins = 0;
      } else {
        std::size_t used = 0;
        config.mi_bins = std::stoi(b, &used);
        if (used != b.size()) throw ConfigError("mi_bins must be 'auto' or an integer");
      }
    }
    if (vm.count("mi_strategy"))
      config.mi_strategy = parse_binning_strategy(vm["mi_strategy"].as<std::string>());
    if (vm.count("mic_alpha")) config.mic.alpha = vm["mic_alpha"].as<double>();
    if (vm.count("mic_clumps")) config.mic.clumps = vm["mic_clumps"].as<int>();
    if (vm.count("mic_normalization"))
      config.mic.normalization = parse_mic_normalization(vm["mic_normalization"].as<std::string>());
    if (vm.count("outcomes")) config.outcomes = split_list(vm["outcomes"].as<std::string>());
    if (vm.count("indicators")) config.indicators = split_list(vm["indicators"].as<std::string>());
    if (vm.count("threads")) config.threads = std::max<std::size_t>(1, vm["threads"].as<std::size_t>());
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return config;
}

std::string format_battery_config(const BatteryConfig& config) {
  std::vector<std::string> methods;
  for (auto m : config.methods) methods.emplace_back(to_string(m));
  std::ostringstream out;
  out.precision(17);
  out << "methods = " << join(methods) << '\n'
      << "min_overlap = " << config.min_overlap << '\n'
      << "max_lag = " << config.max_lag << '\n'
      << "difference_first = " << (config.difference_first ? "true" : "false") << '\n'
      << "granger_direction = "
      << (config.granger_direction == GrangerDirection::IndicatorToOutcome ? "indicator_to_outcome"
                                                                           : "outcome_to_indicator")
      << '\n'
      << "mi_bins = " << (config.mi_bins == 0 ? std::string("auto") : std::to_string(config.mi_bins))
      << '\n'
      << "mi_strategy = " << to_string(config.mi_strategy) << '\n'
      << "mic_alpha = " << config.mic.alpha << '\n'
      << "mic_clumps = " << config.mic.clumps << '\n'
      << "mic_normalization = " << to_string(config.mic.normalization) << '\n';
  if (!config.outcomes.empty()) out << "outcomes = " << join(config.outcomes) << '\n';
  if (!config.indicators.empty()) out << "indicators = " << join(config.indicators) << '\n';
  return out.str();
}

std::vector<ResultMatrix> run_battery(const PanelDataset& dataset, const BatteryConfig& config) {
  const Plan plan = plan_battery(dataset, config);

  std::vector<ResultMatrix> matrices;
  for (Method method : config.methods)
    for (const auto& outcome : plan.outcomes) {
      ResultMatrix m;
      m.method = method;
      m.outcome = outcome;
      m.age_group = dataset.indicator(outcome)->age_group.value_or(AgeGroup::AllAges);
      m.rows = dataset.regions();
      m.cols = plan.indicators;
      m.cells.resize(m.rows.size() * m.cols.size());
      matrices.push_back(std::move(m));
    }

  std::vector<WorkItem> work;
  for (std::size_t mi = 0; mi < matrices.size(); ++mi)
    for (std::size_t c = 0; c < matrices[mi].cells.size(); ++c) work.push_back({mi, c});

  auto run = [&](const WorkItem& item) {
    auto& m = matrices[item.matrix];
    const std::size_t row = item.cell / m.cols.size();
    const std::size_t col = item.cell % m.cols.size();
    m.cells[item.cell] = compute_cell(dataset, m, row, col, config);
  };

  const std::size_t workers = std::min(config.threads, work.size());
  if (workers <= 1) {
    for (const auto& item : work) run(item);
  } else {
    // Each slot is written by exactly one worker, so assembly order is fixed.
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < work.size(); i = next++) run(work[i]);
      });
  }
  return matrices;
}

std::optional<std::size_t> LagSummaryRow::modal_lag() const {
  std::optional<std::size_t> best;
  std::size_t best_count = 0;
  for (const auto& [lag, count] : counts)
    if (count > best_count) {
      best = lag;
      best_count = count;
    }
  return best;
}

std::vector<LagSummaryRow> summarize_lags(const std::vector<ResultMatrix>& matrices) {
  std::map<std::pair<Category, std::string>, std::map<std::size_t, std::size_t>> table;
  for (const auto& m : matrices) {
    if (m.method != Method::Granger)
      throw TypeError("summarize_lags expects granger matrices, got " + std::string(to_string(m.method)));
    for (std::size_t r = 0; r < m.rows.size(); ++r)
      for (std::size_t c = 0; c < m.cols.size(); ++c) {
        const auto& cell = m.at(r, c);
        if (!cell.result) continue;
        const auto& sweep = std::get<LagSweep>(*cell.result);
        Category category = Category::MentalHealth;
        try {
          category = indicator_lookup(m.cols[c]).category;
        } catch (const NotFoundError&) {
        }
        ++table[{category, m.outcome}][sweep.best().lag];
      }
  }
  std::vector<LagSummaryRow> out;
  for (auto& [key, counts] : table) out.push_back({key.first, key.second, std::move(counts)});
  return out;
}

}  // namespace burdenlab
