#include "burdenlab/fixture.hpp"

#include <charconv>
#include <random>

#include "burdenlab/panel_data.hpp"

namespace burdenlab {

namespace {

constexpr int kFirstOutcomeYear = 1991;
constexpr int kLastOutcomeYear = 2021;

std::string format_value(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, ptr);
}

// Uniform noise in [-0.5, 0.5) from raw engine bits; the standard
// distributions are not portable across library implementations.
double centered_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
}

}  // namespace

std::string fixture_panel_csv(bool with_outcomes, std::uint64_t seed) {
  const std::string_view table = table3_fixture_csv();
  if (!with_outcomes) return std::string(table);

  const PanelDataset panel = parse_wdi_wide(table);
  const auto& s2 = *panel.cell("global", "S2");
  const auto& ed3 = *panel.cell("global", "ED3");
  const auto& e2 = *panel.cell("global", "E2");
  const auto years = panel.year_span();

  std::mt19937_64 rng(seed);
  std::string young = "synthetic_depressive:20-39:DALYs,global";
  std::string older = "synthetic_depressive:40+:DALYs,global";
  for (int year : years) {
    const double noise_young = 4.0 * centered_uniform(rng);
    const double noise_older = 4.0 * centered_uniform(rng);
    const bool in_range = year >= kFirstOutcomeYear && year <= kLastOutcomeYear;
    const auto lagged_e2 = e2.at(year - 1);
    young += ",";
    older += ",";
    if (in_range) young += format_value(520.0 + 45.0 * *s2.at(year) - 3.0 * *ed3.at(year) + noise_young);
    else young += "-";
    if (in_range && lagged_e2)
      older += format_value(760.0 + 20.0 * *s2.at(year) - 9.0 * *lagged_e2 + noise_older);
    else
      older += "-";
  }
  std::string out(table);
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out + young + "\n" + older + "\n";
}

}  // namespace burdenlab
