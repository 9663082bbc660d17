#include "burdenlab/reporting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <openssl/evp.h>

#include "burdenlab/errors.hpp"
#include "json.hpp"

namespace burdenlab {

using nlohmann::json;

namespace {

constexpr int kCellSize = 36;
constexpr int kLeftMargin = 180;
constexpr int kTopMargin = 56;
constexpr int kLegendWidth = 150;
constexpr std::string_view kAbsentFill = "#bdbdbd";

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json result_json(const CellResult& result) {
  return std::visit(
      [](const auto& r) -> json {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, PearsonResult>) {
          return {{"r", number(r.r)}, {"n", r.n}, {"p_value", number(r.p_value)}};
        } else if constexpr (std::is_same_v<T, MutualInfoResult>) {
          return {{"mi", number(r.mi)},
                  {"bins_x", r.bins_x},
                  {"bins_y", r.bins_y},
                  {"strategy", std::string(to_string(r.strategy))}};
        } else if constexpr (std::is_same_v<T, LagSweep>) {
          json lags = json::array();
          for (const auto& g : r.results)
            lags.push_back({{"lag", g.lag},
                            {"f_stat", number(g.f_stat)},
                            {"p_value", number(g.p_value)},
                            {"rss_restricted", number(g.rss_restricted)},
                            {"rss_unrestricted", number(g.rss_unrestricted)},
                            {"n_eff", g.n_eff}});
          json skipped = json::array();
          for (const auto& s : r.skipped)
            skipped.push_back({{"lag", s.lag}, {"reason", s.reason}, {"detail", s.detail}});
          return {{"best_lag", r.best().lag}, {"lags", lags}, {"skipped_lags", skipped}};
        } else {
          return {{"mic", number(r.mic)},
                  {"best_b1", r.best_b1},
                  {"best_b2", r.best_b2},
                  {"grid_bound", r.grid_bound},
                  {"normalization", std::string(to_string(r.normalization))},
                  {"degenerate", r.degenerate}};
        }
      },
      result);
}

json config_json(const BatteryConfig& c) {
  json methods = json::array();
  for (auto m : c.methods) methods.push_back(std::string(to_string(m)));
  return {{"methods", methods},
          {"min_overlap", c.min_overlap},
          {"max_lag", c.max_lag},
          {"difference_first", c.difference_first},
          {"granger_direction", c.granger_direction == GrangerDirection::IndicatorToOutcome
                                    ? "indicator_to_outcome"
                                    : "outcome_to_indicator"},
          {"mi_bins", c.mi_bins == 0 ? json("auto") : json(c.mi_bins)},
          {"mi_strategy", std::string(to_string(c.mi_strategy))},
          {"mic_alpha", c.mic.alpha},
          {"mic_clumps", c.mic.clumps},
          {"mic_normalization", std::string(to_string(c.mic.normalization))},
          {"outcomes", c.outcomes},
          {"indicators", c.indicators}};
}

std::string_view plotted_quantity(Method m) {
  switch (m) {
    case Method::Pearson: return "r";
    case Method::MutualInformation: return "mi_bits";
    case Method::Granger: return "p_value_at_best_lag";
    case Method::Mic: return "mic";
  }
  return "r";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string hex_color(double r, double g, double b) {
  auto channel = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0))); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(r), channel(g), channel(b));
  return buf;
}

std::string blend_from_white(double t, int r, int g, int b) {
  return hex_color(255.0 + (r - 255.0) * t, 255.0 + (g - 255.0) * t, 255.0 + (b - 255.0) * t);
}

Palette resolve(Palette palette, Method method) {
  if (palette != Palette::Auto) return palette;
  switch (method) {
    case Method::Pearson: return Palette::Diverging;
    case Method::Granger: return Palette::ReversedSequential;
    default: return Palette::Sequential;
  }
}

std::string_view palette_note(Palette p) {
  switch (p) {
    case Palette::Diverging: return "blue (-1) / white (0) / red (+1)";
    case Palette::Sequential: return "white (0) to green (matrix max)";
    case Palette::ReversedSequential: return "white (p = 1) to dark blue (p <= 1e-10), log scale";
    case Palette::Auto: break;
  }
  return "";
}

}  // namespace

std::optional<double> cell_scalar(Method method, const MatrixCell& cell) {
  if (!cell.result) return std::nullopt;
  switch (method) {
    case Method::Pearson: return std::get<PearsonResult>(*cell.result).r;
    case Method::MutualInformation: return std::get<MutualInfoResult>(*cell.result).mi;
    case Method::Granger: return std::get<LagSweep>(*cell.result).best().p_value;
    case Method::Mic: return std::get<MicResult>(*cell.result).mic;
  }
  return std::nullopt;
}

std::string format_scalar(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%#.6g", v);
  return buf;
}

std::string export_csv(const ResultMatrix& matrix) {
  std::string out = "region";
  for (const auto& code : matrix.cols) out += "," + code;
  out += '\n';
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    const auto& region = matrix.rows[r];
    out += region.find(',') == std::string::npos ? region : "\"" + region + "\"";
    for (std::size_t c = 0; c < matrix.cols.size(); ++c) {
      const auto v = cell_scalar(matrix.method, matrix.at(r, c));
      out += ",";
      out += v ? format_scalar(*v) : "-";
    }
    out += '\n';
  }
  return out;
}

std::string dataset_fingerprint(const PanelDataset& panel) {
  const std::string canonical = write_wdi_wide(panel);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw Error("internal", "SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string export_json(const ExportBundle& bundle) {
  json matrices = json::array();
  json sample_sizes = json::object();
  for (const auto& m : bundle.matrices) {
    json cells = json::array();
    json sizes = json::array();
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
      json size_row = json::array();
      for (std::size_t c = 0; c < m.cols.size(); ++c) {
        const auto& cell = m.at(r, c);
        const auto scalar = cell_scalar(m.method, cell);
        cells.push_back({{"region", m.rows[r]},
                         {"indicator", m.cols[c]},
                         {"n", cell.n},
                         {"value", scalar ? number(*scalar) : json(nullptr)},
                         {"result", cell.result ? result_json(*cell.result) : json(nullptr)},
                         {"skip", cell.skip ? json{{"reason", cell.skip->reason},
                                                   {"detail", cell.skip->detail}}
                                            : json(nullptr)}});
        size_row.push_back(cell.n);
      }
      sizes.push_back(size_row);
    }
    sample_sizes[matrix_stem(m)] = sizes;
    matrices.push_back({{"id", matrix_stem(m)},
                        {"method", std::string(to_string(m.method))},
                        {"age_group", std::string(to_string(m.age_group))},
                        {"outcome", m.outcome},
                        {"plotted_quantity", std::string(plotted_quantity(m.method))},
                        {"rows", m.rows},
                        {"cols", m.cols},
                        {"computed", m.computed_count()},
                        {"skipped", m.skip_count()},
                        {"cells", cells}});
  }
  const json doc = {{"metadata",
                     {{"tool", "burdenlab"},
                      {"tool_version", std::string(kToolVersion)},
                      {"config", config_json(bundle.config)},
                      {"dataset_fingerprint", bundle.dataset_fingerprint},
                      {"granger_plotted_quantity", "p_value_at_best_lag"},
                      {"sample_sizes", sample_sizes}}},
                    {"matrices", matrices}};
  return doc.dump(2) + "\n";
}

Palette parse_palette(std::string_view s) {
  if (s == "auto") return Palette::Auto;
  if (s == "diverging") return Palette::Diverging;
  if (s == "sequential") return Palette::Sequential;
  if (s == "reversed_sequential" || s == "pvalue") return Palette::ReversedSequential;
  throw DomainError("unknown palette '" + std::string(s) + "'");
}

std::string palette_color(Palette palette, double value, double scale_max) {
  switch (palette) {
    case Palette::Diverging: {
      const double t = std::clamp(value, -1.0, 1.0);
      if (t >= 0.0) return blend_from_white(t, 255, 0, 0);
      return blend_from_white(-t, 0, 0, 255);
    }
    case Palette::Sequential: {
      const double t = scale_max > 0.0 ? std::clamp(value / scale_max, 0.0, 1.0) : 0.0;
      return blend_from_white(t, 0, 68, 27);
    }
    case Palette::ReversedSequential: {
      const double p = std::clamp(value, 1e-10, 1.0);
      const double t = std::clamp(-std::log10(p) / 10.0, 0.0, 1.0);
      return blend_from_white(t, 8, 48, 107);
    }
    case Palette::Auto: break;
  }
  throw DomainError("palette must be resolved before coloring");
}

namespace {

std::optional<double> cell_p_value(const MatrixCell& cell) {
  if (!cell.result) return std::nullopt;
  if (const auto* p = std::get_if<PearsonResult>(&*cell.result)) return p->p_value;
  if (const auto* s = std::get_if<LagSweep>(&*cell.result)) return s->best().p_value;
  return std::nullopt;
}

}  // namespace

std::string render_heatmap_svg(const ResultMatrix& matrix, Palette palette,
                               std::optional<double> p_mask) {
  if (matrix.rows.empty() || matrix.cols.empty())
    throw DomainError("cannot render a heatmap without rows and columns");
  if (p_mask && !(*p_mask > 0.0 && *p_mask <= 1.0))
    throw DomainError("p-value mask must lie in (0, 1]");
  const Palette p = resolve(palette, matrix.method);

  double scale_max = 0.0;
  for (const auto& cell : matrix.cells)
    if (const auto v = cell_scalar(matrix.method, cell); v && std::isfinite(*v))
      scale_max = std::max(scale_max, *v);

  const int grid_w = static_cast<int>(matrix.cols.size()) * kCellSize;
  const int grid_h = static_cast<int>(matrix.rows.size()) * kCellSize;
  const int width = kLeftMargin + grid_w + kLegendWidth;
  const int height = kTopMargin + grid_h + 80;

  std::string svg;
  auto line = [&](const std::string& s) { svg += s + "\n"; };
  line("<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
  line("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
       "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) + " " +
       std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"11\">");
  line("  <title>" + xml_escape(std::string(to_string(matrix.method)) + " | " + matrix.outcome +
                                " | " + std::string(to_string(matrix.age_group))) +
       "</title>");
  line("  <text x=\"" + std::to_string(kLeftMargin) + "\" y=\"24\" font-size=\"14\">" +
       xml_escape(std::string(to_string(matrix.method)) + ": " + matrix.outcome + " (" +
                  std::string(to_string(matrix.age_group)) + ")") +
       "</text>");

  line("  <g class=\"cells\">");
  for (std::size_t r = 0; r < matrix.rows.size(); ++r)
    for (std::size_t c = 0; c < matrix.cols.size(); ++c) {
      const auto& cell = matrix.at(r, c);
      const int x = kLeftMargin + static_cast<int>(c) * kCellSize;
      const int y = kTopMargin + static_cast<int>(r) * kCellSize;
      const auto v = cell_scalar(matrix.method, cell);
      std::string fill(kAbsentFill);
      std::string opacity;
      std::string tip = matrix.rows[r] + " / " + matrix.cols[c] + ": ";
      if (v) {
        fill = palette_color(p, *v, scale_max);
        tip += format_scalar(*v) + " (n=" + std::to_string(cell.n) + ")";
        if (const auto pv = cell_p_value(cell); p_mask && pv && *pv > *p_mask) {
          opacity = "\" fill-opacity=\"0.3";
          tip += " p > " + format_scalar(*p_mask);
        }
      } else {
        tip += "skipped";
        if (cell.skip) tip += " [" + cell.skip->reason + "] " + cell.skip->detail;
      }
      line("    <rect class=\"cell\" x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
           "\" width=\"" + std::to_string(kCellSize) + "\" height=\"" + std::to_string(kCellSize) +
           "\" fill=\"" + fill + opacity + "\" stroke=\"#ffffff\"><title>" + xml_escape(tip) +
           "</title></rect>");
    }
  line("  </g>");

  line("  <g class=\"y-axis\" text-anchor=\"end\">");
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    const int y = kTopMargin + static_cast<int>(r) * kCellSize + kCellSize / 2 + 4;
    line("    <text x=\"" + std::to_string(kLeftMargin - 6) + "\" y=\"" + std::to_string(y) + "\">" +
         xml_escape(matrix.rows[r]) + "</text>");
  }
  line("  </g>");

  line("  <g class=\"x-axis\" text-anchor=\"end\">");
  for (std::size_t c = 0; c < matrix.cols.size(); ++c) {
    const int x = kLeftMargin + static_cast<int>(c) * kCellSize + kCellSize / 2;
    const int y = kTopMargin + grid_h + 12;
    line("    <text x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) +
         "\" transform=\"rotate(-45 " + std::to_string(x) + " " + std::to_string(y) + ")\">" +
         xml_escape(matrix.cols[c]) + "</text>");
  }
  line("  </g>");

  const int lx = kLeftMargin + grid_w + 16;
  line("  <g class=\"legend\">");
  line("    <text x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(kTopMargin + 10) + "\">" +
       xml_escape(std::string(plotted_quantity(matrix.method))) + "</text>");
  line("    <text x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(kTopMargin + 26) +
       "\" font-size=\"9\">" + xml_escape(std::string(palette_note(p))) + "</text>");
  if (p == Palette::Sequential)
    line("    <text x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(kTopMargin + 40) +
         "\" font-size=\"9\">max = " + format_scalar(scale_max) + "</text>");
  line("    <text x=\"" + std::to_string(lx) + "\" y=\"" + std::to_string(kTopMargin + 54) +
       "\" font-size=\"9\">gray = skipped</text>");
  line("  </g>");
  line("</svg>");
  return svg;
}

std::string matrix_stem(const ResultMatrix& matrix) {
  std::string outcome;
  for (char c : matrix.outcome) outcome += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return std::string(to_string(matrix.method)) + "__" + std::string(to_string(matrix.age_group)) +
         "__" + outcome;
}

}  // namespace burdenlab
