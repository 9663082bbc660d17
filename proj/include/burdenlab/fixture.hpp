#pragma once

#include <cstdint>
#include <string>

namespace burdenlab {

inline constexpr std::uint64_t kDefaultFixtureSeed = 20211990;

/// The embedded indicator table, optionally followed by two synthetic DALY
/// outcome rows ("synthetic_depressive:20-39:DALYs" and
/// "synthetic_depressive:40+:DALYs", 1991-2021). The outcomes are invented
/// test data derived from the indicator rows plus seeded noise; they carry no
/// empirical meaning.
std::string fixture_panel_csv(bool with_outcomes, std::uint64_t seed = kDefaultFixtureSeed);

}  // namespace burdenlab
