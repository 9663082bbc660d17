#include "burdenlab/info_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "burdenlab/errors.hpp"

namespace burdenlab {

namespace {

double xlog2x(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

std::vector<std::size_t> sorted_order(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return order;
}

/// Runs of equal values along `order`, as [begin, end) offsets into `order`.
std::vector<std::pair<std::size_t, std::size_t>> tie_runs(std::span<const double> values,
                                                          const std::vector<std::size_t>& order) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

/// Assigns consecutive indivisible groups of the given sizes to at most
/// `bins` buckets of near-equal total size. A group opens a new bucket when
/// adding it would move the current bucket further from its target; the
/// target is recomputed from what remains after every cut.
std::vector<int> assign_groups(const std::vector<std::size_t>& sizes, int bins) {
  std::vector<int> out(sizes.size(), 0);
  std::size_t remaining = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  int bucket = 0;
  double desired = static_cast<double>(remaining) / bins;
  std::size_t filled = 0;
  for (std::size_t g = 0; g < sizes.size(); ++g) {
    const double with = std::abs(static_cast<double>(filled + sizes[g]) - desired);
    const double without = std::abs(static_cast<double>(filled) - desired);
    if (filled != 0 && with >= without && bucket + 1 < bins) {
      ++bucket;
      filled = 0;
      desired = static_cast<double>(remaining) / (bins - bucket);
    }
    out[g] = bucket;
    filled += sizes[g];
    remaining -= sizes[g];
  }
  return out;
}

bool has_single_value(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

void validate_mic(const AlignedPair& pair, const MicOptions& options) {
  if (pair.y.size() != pair.n()) throw DomainError("pair sequences differ in length");
  if (pair.n() < kMicMinSamples)
    throw InsufficientDataError("mic needs at least " + std::to_string(kMicMinSamples) +
                                " points, got " + std::to_string(pair.n()));
  if (!(options.alpha > 0.0 && options.alpha <= 1.0))
    throw DomainError("mic alpha must lie in (0, 1]");
  if (options.clumps < 1) throw DomainError("mic clumps factor must be at least 1");
}

/// Best mutual information seen for one grid resolution, with the entropies
/// of the partitions that achieved it.
struct CellBest {
  double mi = -1.0;
  double h_x = 0.0;
  double h_y = 0.0;

  void offer(double candidate, double hx, double hy) {
    if (candidate > mi) {
      mi = candidate;
      h_x = hx;
      h_y = hy;
    }
  }
};

using Cells = std::map<std::pair<int, int>, CellBest>;

/// Calls `visit` with every strictly increasing choice of `k` cut positions
/// out of `slots`.
template <typename Visit>
void for_each_cut_set(int slots, int k, Visit&& visit) {
  std::vector<int> cuts(static_cast<std::size_t>(k));
  std::iota(cuts.begin(), cuts.end(), 0);
  if (k > slots) return;
  while (true) {
    visit(cuts);
    int i = k - 1;
    while (i >= 0 && cuts[static_cast<std::size_t>(i)] == slots - k + i) --i;
    if (i < 0) return;
    ++cuts[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cuts[static_cast<std::size_t>(j)] = cuts[static_cast<std::size_t>(j - 1)] + 1;
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Rank of each value among the distinct values of `v`.
std::vector<int> distinct_ranks(std::span<const double> v, int& distinct) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  distinct = static_cast<int>(sorted.size());
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v[i]) - sorted.begin());
  return out;
}

/// Approximate search: equipartition the fixed axis into `fixed` groups and
/// optimize the free axis. `transpose` records that the fixed axis is x.
void approximate_pass(std::span<const double> free_axis, std::span<const double> fixed_axis,
                      int bound, int clumps, bool transpose, Cells& cells) {
  for (int fixed = 2; fixed <= bound / 2; ++fixed) {
    const int max_free = bound / fixed;
    if (max_free < 2) break;
    const auto labels = detail::equipartition(fixed_axis, fixed);
    const int row_count = *std::max_element(labels.begin(), labels.end()) + 1;
    const auto opt = detail::optimize_axis(free_axis, labels, row_count, max_free,
                                           static_cast<std::size_t>(clumps) * max_free);
    for (int free = 2; free <= max_free; ++free) {
      const double hf = opt.column_entropy[static_cast<std::size_t>(free)];
      if (transpose)
        cells[{fixed, free}].offer(opt.best_mi[static_cast<std::size_t>(free)], opt.row_entropy, hf);
      else
        cells[{free, fixed}].offer(opt.best_mi[static_cast<std::size_t>(free)], hf, opt.row_entropy);
    }
  }
}

/// Exhaustive search over every partition of the fixed axis into `fixed`
/// groups, for fixed <= sqrt(bound); the free axis is optimized exactly.
void exhaustive_pass(std::span<const double> free_axis, std::span<const double> fixed_axis,
                     int bound, bool transpose, Cells& cells) {
  int distinct = 0;
  const auto ranks = distinct_ranks(fixed_axis, distinct);
  std::vector<int> labels(ranks.size());
  std::vector<int> group_of(static_cast<std::size_t>(distinct));
  for (int fixed = 2; fixed * fixed <= bound; ++fixed) {
    const int max_free = bound / fixed;
    const int groups = std::min(fixed, distinct);
    for_each_cut_set(distinct - 1, groups - 1, [&](const std::vector<int>& cuts) {
      std::size_t c = 0;
      int g = 0;
      for (int d = 0; d < distinct; ++d) {
        group_of[static_cast<std::size_t>(d)] = g;
        if (c < cuts.size() && cuts[c] == d) {
          ++g;
          ++c;
        }
      }
      for (std::size_t i = 0; i < ranks.size(); ++i)
        labels[i] = group_of[static_cast<std::size_t>(ranks[i])];
      const auto opt = detail::optimize_axis(free_axis, labels, groups, max_free, 0);
      for (int free = 2; free <= max_free; ++free) {
        const double hf = opt.column_entropy[static_cast<std::size_t>(free)];
        const double mi = opt.best_mi[static_cast<std::size_t>(free)];
        if (transpose)
          cells[{fixed, free}].offer(mi, opt.row_entropy, hf);
        else
          cells[{free, fixed}].offer(mi, hf, opt.row_entropy);
      }
    });
  }
}

double exhaustive_cost(std::span<const double> axis, int bound) {
  int distinct = 0;
  distinct_ranks(axis, distinct);
  double total = 0.0;
  for (int fixed = 2; fixed * fixed <= bound; ++fixed)
    total += binomial(distinct - 1, std::min(fixed, distinct) - 1);
  return total;
}

}  // namespace

std::string_view to_string(BinningStrategy s) {
  return s == BinningStrategy::EqualWidth ? "equal_width" : "equal_frequency";
}

BinningStrategy parse_binning_strategy(std::string_view s) {
  if (s == "equal_width" || s == "equal-width") return BinningStrategy::EqualWidth;
  if (s == "equal_frequency" || s == "equal-frequency") return BinningStrategy::EqualFrequency;
  throw DomainError("unknown binning strategy '" + std::string(s) + "'");
}

std::string_view to_string(MicNormalization n) {
  return n == MicNormalization::MinGridLog ? "min_grid_log" : "max_entropy";
}

MicNormalization parse_mic_normalization(std::string_view s) {
  if (s == "min_grid_log" || s == "min-grid-log") return MicNormalization::MinGridLog;
  if (s == "max_entropy" || s == "max-entropy") return MicNormalization::MaxEntropy;
  throw DomainError("unknown MIC normalization '" + std::string(s) + "'");
}

std::vector<int> discretize(std::span<const double> values, int bins, BinningStrategy strategy) {
  if (bins < 2) throw DomainError("discretize needs at least 2 bins");
  if (values.size() < static_cast<std::size_t>(bins))
    throw DomainError("discretize needs at least as many values as bins");
  const std::size_t n = values.size();
  std::vector<int> labels(n, 0);
  if (strategy == BinningStrategy::EqualFrequency) {
    const auto order = sorted_order(values);
    for (std::size_t rank = 0; rank < n; ++rank)
      labels[order[rank]] = static_cast<int>(rank * static_cast<std::size_t>(bins) / n);
    return labels;
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double width = (*hi - *lo) / bins;
  if (!(width > 0.0)) return labels;
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = static_cast<int>(std::floor((values[i] - *lo) / width));
    labels[i] = std::clamp(b, 0, bins - 1);
  }
  return labels;
}

double entropy(std::span<const int> labels) {
  if (labels.empty()) throw DomainError("entropy of an empty sequence");
  std::map<int, std::size_t> counts;
  for (int l : labels) ++counts[l];
  const double n = static_cast<double>(labels.size());
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;
}

JointHistogram::JointHistogram(int bins_x, int bins_y)
    : bins_x_(bins_x), bins_y_(bins_y) {
  if (bins_x < 1 || bins_y < 1) throw DomainError("histogram needs at least one bin per axis");
  counts_.assign(static_cast<std::size_t>(bins_x) * static_cast<std::size_t>(bins_y), 0);
}

JointHistogram JointHistogram::from_labels(std::span<const int> x, std::span<const int> y,
                                           int bins_x, int bins_y) {
  if (x.size() != y.size()) throw DomainError("label sequences differ in length");
  JointHistogram h(bins_x, bins_y);
  for (std::size_t i = 0; i < x.size(); ++i) h.add(x[i], y[i]);
  return h;
}

std::size_t JointHistogram::index(int bx, int by) const {
  if (bx < 0 || bx >= bins_x_ || by < 0 || by >= bins_y_)
    throw DomainError("histogram cell out of range");
  return static_cast<std::size_t>(bx) * static_cast<std::size_t>(bins_y_) +
         static_cast<std::size_t>(by);
}

void JointHistogram::add(int bx, int by, std::size_t count) {
  counts_[index(bx, by)] += count;
  total_ += count;
}

double JointHistogram::mutual_information() const {
  if (total_ == 0) return 0.0;
  std::vector<double> px(static_cast<std::size_t>(bins_x_), 0.0);
  std::vector<double> py(static_cast<std::size_t>(bins_y_), 0.0);
  for (int i = 0; i < bins_x_; ++i)
    for (int j = 0; j < bins_y_; ++j) {
      const auto c = static_cast<double>(count(i, j));
      px[static_cast<std::size_t>(i)] += c;
      py[static_cast<std::size_t>(j)] += c;
    }
  const double n = static_cast<double>(total_);
  double mi = 0.0;
  for (int i = 0; i < bins_x_; ++i)
    for (int j = 0; j < bins_y_; ++j) {
      const auto c = static_cast<double>(count(i, j));
      if (c == 0.0) continue;
      mi += (c / n) * std::log2(c * n / (px[static_cast<std::size_t>(i)] * py[static_cast<std::size_t>(j)]));
    }
  return std::max(mi, 0.0);
}

int default_mi_bins(std::size_t n) {
  const auto root = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
  return std::clamp(root, 2, 10);
}

MutualInfoResult mutual_information(const AlignedPair& pair, int bins, BinningStrategy strategy) {
  if (pair.y.size() != pair.n()) throw DomainError("pair sequences differ in length");
  if (bins < 2) throw DomainError("mutual information needs at least 2 bins");
  const std::size_t need = std::max<std::size_t>(static_cast<std::size_t>(bins), 4);
  if (pair.n() < need)
    throw InsufficientDataError("mutual information with " + std::to_string(bins) +
                                " bins needs at least " + std::to_string(need) + " points");
  const auto lx = discretize(pair.x, bins, strategy);
  const auto ly = discretize(pair.y, bins, strategy);
  const auto hist = JointHistogram::from_labels(lx, ly, bins, bins);
  return {hist.mutual_information(), bins, bins, strategy};
}

int mic_grid_bound(std::size_t n, double alpha) {
  return static_cast<int>(std::ceil(std::pow(static_cast<double>(n), alpha)));
}

std::vector<GridScore> characteristic_matrix(const AlignedPair& pair, const MicOptions& options) {
  validate_mic(pair, options);
  if (has_single_value(pair.x) || has_single_value(pair.y)) return {};
  const int bound = mic_grid_bound(pair.n(), options.alpha);

  Cells cells;
  if (options.search == MicSearch::Approximate) {
    approximate_pass(pair.x, pair.y, bound, options.clumps, false, cells);
    approximate_pass(pair.y, pair.x, bound, options.clumps, true, cells);
  } else {
    constexpr double kBudget = 2e6;
    const double cost = exhaustive_cost(pair.x, bound) + exhaustive_cost(pair.y, bound);
    if (cost > kBudget)
      throw DomainError("exhaustive MIC search needs " + std::to_string(cost) +
                        " partitions, above the supported budget");
    exhaustive_pass(pair.x, pair.y, bound, false, cells);
    exhaustive_pass(pair.y, pair.x, bound, true, cells);
  }

  std::vector<GridScore> out;
  out.reserve(cells.size());
  for (const auto& [key, best] : cells) {
    const auto [b1, b2] = key;
    if (b1 * b2 > bound || best.mi < 0.0) continue;
    double score = 0.0;
    if (options.normalization == MicNormalization::MinGridLog) {
      score = best.mi / std::log2(static_cast<double>(std::min(b1, b2)));
    } else {
      const double denom = std::max(best.h_x, best.h_y);
      score = denom > 0.0 ? best.mi / denom : 0.0;
    }
    out.push_back({b1, b2, best.mi, std::clamp(score, 0.0, 1.0)});
  }
  return out;
}

MicResult mic(const AlignedPair& pair, const MicOptions& options) {
  validate_mic(pair, options);
  MicResult result;
  result.grid_bound = mic_grid_bound(pair.n(), options.alpha);
  result.normalization = options.normalization;
  if (has_single_value(pair.x) || has_single_value(pair.y)) {
    result.degenerate = true;
    return result;
  }
  // Ordered by (b1, b2), so a strict comparison keeps the smallest resolution on ties.
  double best = -1.0;
  for (const auto& cell : characteristic_matrix(pair, options)) {
    if (cell.score > best) {
      best = cell.score;
      result.mic = cell.score;
      result.best_b1 = cell.b1;
      result.best_b2 = cell.b2;
    }
  }
  return result;
}

namespace detail {

std::vector<int> equipartition(std::span<const double> values, int bins) {
  if (bins < 1) throw DomainError("equipartition needs at least one bin");
  const auto order = sorted_order(values);
  const auto runs = tie_runs(values, order);
  std::vector<std::size_t> sizes;
  sizes.reserve(runs.size());
  for (const auto& [b, e] : runs) sizes.push_back(e - b);
  const auto groups = assign_groups(sizes, bins);
  std::vector<int> labels(values.size());
  for (std::size_t r = 0; r < runs.size(); ++r)
    for (std::size_t k = runs[r].first; k < runs[r].second; ++k) labels[order[k]] = groups[r];
  return labels;
}

AxisOptimum optimize_axis(std::span<const double> x, std::span<const int> rows, int row_count,
                          int max_columns, std::size_t clump_limit) {
  if (x.size() != rows.size()) throw DomainError("axis and row labels differ in length");
  const std::size_t n = x.size();
  const auto rc = static_cast<std::size_t>(row_count);
  const auto kmax = static_cast<std::size_t>(std::max(max_columns, 0));

  AxisOptimum out;
  out.best_mi.assign(kmax + 1, 0.0);
  out.column_entropy.assign(kmax + 1, 0.0);
  if (n == 0 || kmax == 0) return out;

  // Row entropy over all points.
  {
    std::vector<double> totals(rc, 0.0);
    for (int r : rows) totals[static_cast<std::size_t>(r)] += 1.0;
    double h = 0.0;
    for (double c : totals) h -= xlog2x(c / static_cast<double>(n));
    out.row_entropy = h == 0.0 ? 0.0 : h;
  }

  // Clumps: maximal runs along x of points sharing one row. A run of tied x
  // values is indivisible; if it spans several rows it is a clump of its own.
  const auto order = sorted_order(x);
  std::vector<std::vector<std::size_t>> clumps;
  int open_row = -2;
  for (const auto& [b, e] : tie_runs(x, order)) {
    std::vector<std::size_t> counts(rc, 0);
    int run_row = rows[order[b]];
    for (std::size_t k = b; k < e; ++k) {
      const int r = rows[order[k]];
      ++counts[static_cast<std::size_t>(r)];
      if (r != run_row) run_row = -1;
    }
    if (run_row >= 0 && run_row == open_row) {
      clumps.back()[static_cast<std::size_t>(run_row)] += e - b;
    } else {
      clumps.push_back(std::move(counts));
    }
    open_row = run_row;
  }

  if (clump_limit > 0 && clumps.size() > clump_limit) {
    std::vector<std::size_t> sizes;
    for (const auto& c : clumps) sizes.push_back(std::accumulate(c.begin(), c.end(), std::size_t{0}));
    const auto groups = assign_groups(sizes, static_cast<int>(clump_limit));
    std::vector<std::vector<std::size_t>> merged;
    for (std::size_t i = 0; i < clumps.size(); ++i) {
      if (i == 0 || groups[i] != groups[i - 1]) merged.emplace_back(rc, 0);
      for (std::size_t r = 0; r < rc; ++r) merged.back()[r] += clumps[i][r];
    }
    clumps = std::move(merged);
  }

  const std::size_t m = clumps.size();
  // prefix[t][r]: points of row r in the first t clumps.
  std::vector<std::vector<double>> prefix(m + 1, std::vector<double>(rc, 0.0));
  std::vector<double> mass(m + 1, 0.0);
  for (std::size_t t = 0; t < m; ++t) {
    for (std::size_t r = 0; r < rc; ++r)
      prefix[t + 1][r] = prefix[t][r] + static_cast<double>(clumps[t][r]);
    mass[t + 1] = mass[t] + std::accumulate(clumps[t].begin(), clumps[t].end(), 0.0);
  }

  // cost[s][t]: contribution of a column spanning clumps s..t-1 to H(Q | P).
  const double dn = static_cast<double>(n);
  std::vector<std::vector<double>> cost(m + 1, std::vector<double>(m + 1, 0.0));
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = s + 1; t <= m; ++t) {
      double v = xlog2x(mass[t] - mass[s]);
      for (std::size_t r = 0; r < rc; ++r) v -= xlog2x(prefix[t][r] - prefix[s][r]);
      cost[s][t] = v / dn;
    }

  // best[l][t]: minimal conditional entropy splitting the first t clumps into l columns.
  const std::size_t lmax = std::min(kmax, m);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(lmax + 1, std::vector<double>(m + 1, kInf));
  std::vector<std::vector<std::size_t>> split(lmax + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t t = 1; t <= m; ++t) best[1][t] = cost[0][t];
  for (std::size_t l = 2; l <= lmax; ++l)
    for (std::size_t t = l; t <= m; ++t)
      for (std::size_t s = l - 1; s < t; ++s) {
        const double v = best[l - 1][s] + cost[s][t];
        if (v < best[l][t]) {
          best[l][t] = v;
          split[l][t] = s;
        }
      }

  auto column_entropy = [&](std::size_t l) {
    double h = 0.0;
    std::size_t t = m;
    for (std::size_t level = l; level >= 1; --level) {
      const std::size_t s = level == 1 ? 0 : split[level][t];
      h -= xlog2x((mass[t] - mass[s]) / dn);
      t = s;
    }
    return h == 0.0 ? 0.0 : h;
  };

  std::size_t best_l = 1;
  for (std::size_t k = 1; k <= kmax; ++k) {
    if (k <= lmax && best[k][m] < best[best_l][m]) best_l = k;
    if (k < 2) continue;
    out.best_mi[k] = std::max(0.0, out.row_entropy - best[best_l][m]);
    out.column_entropy[k] = column_entropy(best_l);
  }
  return out;
}

}  // namespace detail

}  // namespace burdenlab
