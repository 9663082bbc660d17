// burdenlab command-line entry point.
//
// Exit codes: 0 success, 1 input/parse error, 2 config error, 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "burdenlab/battery.hpp"
#include "burdenlab/burden_metrics.hpp"
#include "burdenlab/errors.hpp"
#include "burdenlab/fixture.hpp"
#include "burdenlab/panel_data.hpp"
#include "burdenlab/reporting.hpp"

namespace fs = std::filesystem;
using namespace burdenlab;

namespace {

enum ExitCode { kOk = 0, kInputError = 1, kConfigError = 2, kNumericalError = 3 };

struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputFailure("cannot write '" + path.string() + "'");
  out << content;
}

int classify(const Error& e) {
  const auto& k = e.kind();
  if (k == "config_error") return kConfigError;
  if (k == "parse_error" || k == "duplicate_key" || k == "mapping_error" || k == "not_found" ||
      k == "missing_band" || k == "missing_weight" || k == "normalization_error")
    return kInputError;
  return kNumericalError;
}

struct Globals {
  std::uint64_t seed = kDefaultFixtureSeed;
  bool quiet = false;
};

void note(const Globals& g, const std::string& message) {
  if (!g.quiet) std::cerr << message << '\n';
}

int cmd_ingest(const Globals& g, const std::string& wdi, const std::string& gbd,
               const std::string& region, const std::string& out) {
  PanelDataset panel;
  if (!wdi.empty()) {
    panel = parse_wdi_wide(read_file(wdi), region.empty() ? "global" : region);
  } else {
    panel = parse_gbd_long(read_file(gbd));
    if (!region.empty()) {
      PanelDataset::Builder only;
      for (const auto& ind : panel.indicators())
        if (const auto* s = panel.cell(region, ind.code)) only.add(region, ind, *s);
      panel = std::move(only).build();
      if (panel.cell_count() == 0) throw InputFailure("no records for location '" + region + "'");
    }
  }
  write_file(out, write_wdi_wide(panel));
  note(g, "wrote " + std::to_string(panel.cell_count()) + " series across " +
              std::to_string(panel.regions().size()) + " region(s) to " + out);
  return kOk;
}

int cmd_analyze(const Globals& g, const std::string& panel_path, const std::string& config_path,
                const std::string& out_dir, std::optional<double> p_mask) {
  const PanelDataset panel = parse_wdi_wide(read_file(panel_path));
  const BatteryConfig config = parse_battery_config(read_file(config_path));
  const auto matrices = run_battery(panel, config);

  fs::create_directories(out_dir);
  for (const auto& m : matrices) {
    const auto stem = matrix_stem(m);
    write_file(fs::path(out_dir) / (stem + ".csv"), export_csv(m));
    write_file(fs::path(out_dir) / (stem + ".svg"), render_heatmap_svg(m, Palette::Auto, p_mask));
  }
  ExportBundle bundle{matrices, config, dataset_fingerprint(panel)};
  write_file(fs::path(out_dir) / "bundle.json", export_json(bundle));

  for (const auto& m : matrices)
    note(g, matrix_stem(m) + ": " + std::to_string(m.computed_count()) + " computed, " +
                std::to_string(m.skip_count()) + " skipped");
  return kOk;
}

int cmd_burden(const std::string& deaths_path, const std::string& prevalence_path,
               const std::string& life_path, const std::string& weights_path,
               const std::string& std_pop_path, const std::string& population_path,
               std::string condition) {
  const BandValues deaths = parse_band_values(read_file(deaths_path));
  const BandValues prevalence = parse_band_values(read_file(prevalence_path));
  const LifeTable life(parse_band_values(read_file(life_path)));
  const DisabilityWeights weights = parse_disability_weights(read_file(weights_path));

  if (condition.empty()) {
    for (const auto& [key, w] : weights.entries()) {
      if (!condition.empty() && condition != key.first)
        throw ConfigError("weights cover several conditions; pass --condition");
      condition = key.first;
    }
  }

  const double yll = compute_yll(deaths, life);
  const double yld = compute_yld(prevalence, weights, condition);
  const BurdenSummary summary = compute_daly(yll, yld);
  std::optional<double> standardized;
  if (!std_pop_path.empty()) {
    // Per-band DALYs; divided by population (per 100,000) when one is given.
    BandValues per_band;
    for (const auto& [band, d] : deaths) per_band[band] += compute_yll({{band, d}}, life);
    for (const auto& [band, p] : prevalence)
      per_band[band] += compute_yld({{band, p}}, weights, condition);
    if (!population_path.empty()) {
      const BandValues population = parse_band_values(read_file(population_path));
      for (auto& [band, v] : per_band) {
        const auto it = population.find(band);
        if (it == population.end()) throw MissingBandError(band);
        if (!(it->second > 0.0)) throw DomainError("population for " + band + " must be positive");
        v = v / it->second * 100000.0;
      }
    }
    standardized = age_standardize(per_band, parse_band_values(read_file(std_pop_path)));
  }

  std::cout << "condition," << condition << '\n'
            << "yll," << format_scalar(summary.yll) << '\n'
            << "yld," << format_scalar(summary.yld) << '\n'
            << "daly," << format_scalar(summary.daly) << '\n';
  if (standardized)
    std::cout << (population_path.empty() ? "age_standardized_daly," : "age_standardized_rate,")
              << format_scalar(*standardized) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Panel dependency analysis of disease burden against development indicators"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for synthetic data (fixture outcomes)");
  app.add_flag("--quiet", globals.quiet, "Suppress progress messages");

  std::string wdi, gbd, region, ingest_out;
  auto* ingest = app.add_subcommand("ingest", "Parse a WDI or GBD file into a panel snapshot");
  auto* wdi_opt = ingest->add_option("--wdi", wdi, "WDI wide CSV")->check(CLI::ExistingFile);
  auto* gbd_opt = ingest->add_option("--gbd", gbd, "GBD long CSV")->check(CLI::ExistingFile);
  wdi_opt->excludes(gbd_opt);
  ingest->add_option("--region", region,
                     "Region for rows without one (WDI) or location to keep (GBD)");
  ingest->add_option("--out", ingest_out, "Panel file to write")->required();

  std::string panel_path, config_path, out_dir;
  auto* analyze = app.add_subcommand("analyze", "Run the dependency battery on a panel");
  analyze->add_option("--panel", panel_path)->required()->check(CLI::ExistingFile);
  analyze->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  analyze->add_option("--out", out_dir, "Output directory")->required();
  std::optional<double> p_mask;
  analyze->add_option("--p-mask", p_mask, "Fade heatmap cells whose p-value exceeds this level")
      ->check(CLI::Range(0.0, 1.0));

  std::string deaths, prevalence, life_table, weights, std_pop, population, condition;
  auto* burden = app.add_subcommand("burden", "Compute YLL, YLD and DALY");
  burden->add_option("--deaths", deaths, "band,value CSV")->required()->check(CLI::ExistingFile);
  burden->add_option("--prevalence", prevalence, "band,value CSV")->required()->check(CLI::ExistingFile);
  burden->add_option("--life-table", life_table, "band,value CSV")->required()->check(CLI::ExistingFile);
  burden->add_option("--weights", weights, "condition,band,value CSV")->required()->check(CLI::ExistingFile);
  burden->add_option("--std-pop", std_pop, "Standard population weights, band,value CSV")
      ->check(CLI::ExistingFile);
  burden->add_option("--population", population, "Population per band, for rates per 100,000")
      ->check(CLI::ExistingFile);
  burden->add_option("--condition", condition, "Condition id in the weights file");

  bool table_only = false;
  std::string fixture_out;
  auto* fixture = app.add_subcommand("fixture", "Emit the embedded indicator table as a panel");
  fixture->add_flag("--table-only", table_only, "Omit the synthetic outcome rows");
  fixture->add_option("--out", fixture_out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*ingest) {
      if (wdi.empty() && gbd.empty()) throw ConfigError("ingest needs --wdi or --gbd");
      return cmd_ingest(globals, wdi, gbd, region, ingest_out);
    }
    if (*analyze) return cmd_analyze(globals, panel_path, config_path, out_dir, p_mask);
    if (*burden)
      return cmd_burden(deaths, prevalence, life_table, weights, std_pop, population, condition);
    if (*fixture) {
      const std::string csv = fixture_panel_csv(!table_only, globals.seed);
      if (fixture_out.empty())
        std::cout << csv;
      else
        write_file(fixture_out, csv);
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return classify(e);
  } catch (const InputFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kNumericalError;
  }
  return kOk;
}
