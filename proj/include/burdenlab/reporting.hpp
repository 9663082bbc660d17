#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "burdenlab/battery.hpp"
#include "burdenlab/panel_data.hpp"

namespace burdenlab {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// The quantity plotted and exported per method: pearson r, mutual
/// information in bits, mic score, granger p-value at the best lag.
std::optional<double> cell_scalar(Method method, const MatrixCell& cell);

/// Six significant digits with trailing zeros kept ("1.00000"); independent
/// of the global locale.
std::string format_scalar(double v);

/// Header "region,<codes...>", one row per region, "-" for absent cells.
std::string export_csv(const ResultMatrix& matrix);

struct ExportBundle {
  std::vector<ResultMatrix> matrices;
  BatteryConfig config;
  /// SHA-256 of the panel's canonical wide-CSV serialization.
  std::string dataset_fingerprint;
};

/// Hex SHA-256 of write_wdi_wide(panel).
std::string dataset_fingerprint(const PanelDataset& panel);

/// Canonical JSON: sorted keys, two-space indent, shortest round-trip
/// numbers, non-finite values as the strings "inf" / "-inf" / "nan".
std::string export_json(const ExportBundle& bundle);

enum class Palette {
  /// Chosen from the matrix method.
  Auto,
  /// Blue-white-red over [-1, 1].
  Diverging,
  /// White to dark green over [0, matrix max].
  Sequential,
  /// Dark for small p-values, log10-scaled over [1e-10, 1].
  ReversedSequential,
};

Palette parse_palette(std::string_view s);

/// Fill color as "#rrggbb" for a value under a palette. `scale_max` is the
/// normalization maximum for the sequential palette.
std::string palette_color(Palette palette, double value, double scale_max = 1.0);

/// Heatmap with indicators along x and regions along y. Throws DomainError
/// for a matrix without rows or columns.
///
/// With `p_mask` set, cells whose p-value exceeds it (pearson and granger
/// only) are drawn faded and flagged in their tooltip.
std::string render_heatmap_svg(const ResultMatrix& matrix, Palette palette = Palette::Auto,
                               std::optional<double> p_mask = std::nullopt);

/// File stem for a matrix's outputs, e.g. "pearson__AllAges__E1_outcome".
std::string matrix_stem(const ResultMatrix& matrix);

}  // namespace burdenlab
