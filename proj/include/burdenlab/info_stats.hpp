#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "burdenlab/panel_data.hpp"

namespace burdenlab {

enum class BinningStrategy { EqualWidth, EqualFrequency };
std::string_view to_string(BinningStrategy s);
BinningStrategy parse_binning_strategy(std::string_view s);

/// Labels in [0, bins). Equal-width spans [min, max] with the maximum in the
/// top bin and a constant input all in bin 0; equal-frequency assigns by
/// stable rank, so tied values are split by order of appearance.
std::vector<int> discretize(std::span<const double> values, int bins, BinningStrategy strategy);

/// Shannon entropy of a label sequence, in bits.
double entropy(std::span<const int> labels);

class JointHistogram {
 public:
  JointHistogram(int bins_x, int bins_y);
  static JointHistogram from_labels(std::span<const int> x, std::span<const int> y, int bins_x,
                                    int bins_y);

  void add(int bx, int by, std::size_t count = 1);
  std::size_t count(int bx, int by) const { return counts_[index(bx, by)]; }
  int bins_x() const noexcept { return bins_x_; }
  int bins_y() const noexcept { return bins_y_; }
  std::size_t total() const noexcept { return total_; }

  /// Plug-in mutual information of the cell frequencies, in bits, clamped at 0.
  double mutual_information() const;

 private:
  std::size_t index(int bx, int by) const;
  int bins_x_;
  int bins_y_;
  std::size_t total_ = 0;
  std::vector<std::size_t> counts_;
};

struct MutualInfoResult {
  double mi = 0.0;
  int bins_x = 0;
  int bins_y = 0;
  BinningStrategy strategy = BinningStrategy::EqualFrequency;
};

/// min(floor(sqrt(n)), 10), never below 2.
int default_mi_bins(std::size_t n);

/// Discretizes both axes with the same bin count and strategy.
/// Needs n >= max(bins, 4).
MutualInfoResult mutual_information(const AlignedPair& pair, int bins,
                                    BinningStrategy strategy = BinningStrategy::EqualFrequency);

enum class MicNormalization {
  /// Each characteristic-matrix cell divided by log2(min(b1, b2)).
  MinGridLog,
  /// Each cell divided by max(H(X), H(Y)) of the maximizing partitions.
  MaxEntropy,
};
std::string_view to_string(MicNormalization n);
MicNormalization parse_mic_normalization(std::string_view s);

enum class MicSearch {
  /// Equipartition one axis, optimize the other over clump boundaries.
  Approximate,
  /// Enumerate every partition of the coarser axis. Only feasible for small n.
  Exhaustive,
};

struct MicOptions {
  double alpha = 0.6;
  int clumps = 15;
  MicNormalization normalization = MicNormalization::MinGridLog;
  MicSearch search = MicSearch::Approximate;
};

struct MicResult {
  double mic = 0.0;
  int best_b1 = 0;
  int best_b2 = 0;
  int grid_bound = 0;
  MicNormalization normalization = MicNormalization::MinGridLog;
  /// Set when an axis has a single distinct value; mic is then 0.
  bool degenerate = false;
};

/// One characteristic-matrix entry: b1 columns on x, b2 rows on y.
struct GridScore {
  int b1 = 0;
  int b2 = 0;
  double mutual_information = 0.0;
  double score = 0.0;
};

inline constexpr std::size_t kMicMinSamples = 25;

/// ceil(n^alpha).
int mic_grid_bound(std::size_t n, double alpha);

/// Normalized characteristic matrix, ordered by (b1, b2). Same preconditions
/// as mic(); empty for a degenerate axis.
std::vector<GridScore> characteristic_matrix(const AlignedPair& pair, const MicOptions& options = {});

MicResult mic(const AlignedPair& pair, const MicOptions& options = {});

namespace detail {

/// Rank-based equipartition of `values` into at most `bins` groups of
/// near-equal size; tied values always share a group.
std::vector<int> equipartition(std::span<const double> values, int bins);

struct AxisOptimum {
  /// best_mi[k] is the largest I(P; Q) over partitions P of the x axis into at
  /// most k columns, for k = 0..max_columns (entries below 2 are 0).
  std::vector<double> best_mi;
  /// H(P) of the maximizing partition for each k.
  std::vector<double> column_entropy;
  double row_entropy = 0.0;
};

/// Maximizes mutual information against the fixed row labels over x-axis
/// partitions whose boundaries fall between clumps. When there are more than
/// `clump_limit` clumps they are first merged into `clump_limit`
/// superclumps; pass 0 for no limit.
AxisOptimum optimize_axis(std::span<const double> x, std::span<const int> rows, int row_count,
                          int max_columns, std::size_t clump_limit);

}  // namespace detail

}  // namespace burdenlab
