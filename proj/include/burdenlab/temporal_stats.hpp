#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "burdenlab/panel_data.hpp"

namespace burdenlab {

/// Dense row-major matrix, just enough for least squares.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct OlsFit {
  std::vector<double> coefficients;
  double rss = 0.0;
};

/// Least squares by Householder QR with column pivoting. Throws
/// SingularDesignError when the numerical rank is below the column count.
OlsFit ols_rss(const Matrix& design, std::span<const double> response);

/// output[i] = input[i + 1] - input[i].
std::vector<double> first_difference(std::span<const double> series);

/// Differences both sequences; the pair keeps the later year of each step.
AlignedPair first_difference(const AlignedPair& pair);

struct LagDesign {
  std::vector<double> response;
  /// Intercept and lags 1..p of y.
  Matrix restricted;
  /// Intercept, lags 1..p of y, then lags 1..p of x.
  Matrix unrestricted;
  std::size_t lag = 0;
  std::size_t n_eff = 0;
};

/// Throws InsufficientDataError unless n - p > 1 + 2p.
LagDesign build_lag_design(std::span<const double> x, std::span<const double> y, std::size_t lag);

struct GrangerResult {
  std::size_t lag = 0;
  /// +infinity when the unrestricted model fits exactly.
  double f_stat = 0.0;
  double p_value = 1.0;
  double rss_restricted = 0.0;
  double rss_unrestricted = 0.0;
  std::size_t n_eff = 0;
};

/// Tests whether x Granger-causes y at the given lag with the nested-model F
/// test on (p, n_eff - 1 - 2p) degrees of freedom. Years must be contiguous.
GrangerResult granger_test(const AlignedPair& pair, std::size_t lag);

/// Upper-tail probability of the F distribution.
double f_sf(double f, double d1, double d2);

struct LagSkip {
  std::size_t lag = 0;
  /// Error kind, e.g. "insufficient_data".
  std::string reason;
  std::string detail;
};

struct LagSweep {
  /// One entry per tested lag, ascending.
  std::vector<GrangerResult> results;
  std::vector<LagSkip> skipped;
  /// Index into `results` of the smallest p-value (earliest lag on ties).
  std::size_t best_index = 0;

  const GrangerResult& best() const { return results.at(best_index); }
};

/// Granger tests for lags 1..max_lag. Lags too long for the series are
/// recorded in `skipped`; if even lag 1 cannot run the sweep throws.
LagSweep lag_sweep(const AlignedPair& pair, std::size_t max_lag);

}  // namespace burdenlab
