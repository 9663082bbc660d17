#include "burdenlab/temporal_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "burdenlab/errors.hpp"
#include "burdenlab/special_functions.hpp"

namespace burdenlab {

namespace {

// Pivots below this fraction of the leading pivot (on unit-norm columns)
// count as rank deficiency.
constexpr double kRankTolerance = 1e-10;

}  // namespace

OlsFit ols_rss(const Matrix& design, std::span<const double> response) {
  const std::size_t m = design.rows();
  const std::size_t k = design.cols();
  if (response.size() != m) throw DomainError("response length does not match design rows");
  if (k == 0 || m <= k)
    throw InsufficientDataError("least squares needs more rows (" + std::to_string(m) +
                                ") than columns (" + std::to_string(k) + ")");

  // Work on unit-norm columns so the rank decision does not depend on units.
  Matrix a = design;
  std::vector<double> scale(k, 1.0);
  for (std::size_t j = 0; j < k; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += a(i, j) * a(i, j);
    s = std::sqrt(s);
    if (s > 0.0) {
      scale[j] = s;
      for (std::size_t i = 0; i < m; ++i) a(i, j) /= s;
    }
  }
  std::vector<double> qtb(response.begin(), response.end());
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> diag(k, 0.0);
  std::vector<double> v(m);

  for (std::size_t j = 0; j < k; ++j) {
    // Pivot: largest remaining column norm over rows j..m-1.
    std::size_t pivot = j;
    double pivot_norm = -1.0;
    for (std::size_t c = j; c < k; ++c) {
      double s = 0.0;
      for (std::size_t i = j; i < m; ++i) s += a(i, c) * a(i, c);
      if (s > pivot_norm) {
        pivot_norm = s;
        pivot = c;
      }
    }
    if (pivot != j) {
      for (std::size_t i = 0; i < m; ++i) std::swap(a(i, j), a(i, pivot));
      std::swap(perm[j], perm[pivot]);
      std::swap(scale[j], scale[pivot]);
    }

    const double norm = std::sqrt(pivot_norm);
    if (norm == 0.0) {
      diag[j] = 0.0;
      continue;
    }
    const double alpha = a(j, j) > 0.0 ? -norm : norm;
    for (std::size_t i = j; i < m; ++i) v[i] = a(i, j);
    v[j] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < m; ++i) vnorm2 += v[i] * v[i];
    diag[j] = alpha;
    if (vnorm2 == 0.0) continue;

    for (std::size_t c = j; c < k; ++c) {
      double dot = 0.0;
      for (std::size_t i = j; i < m; ++i) dot += v[i] * a(i, c);
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = j; i < m; ++i) a(i, c) -= f * v[i];
    }
    double dot = 0.0;
    for (std::size_t i = j; i < m; ++i) dot += v[i] * qtb[i];
    const double f = 2.0 * dot / vnorm2;
    for (std::size_t i = j; i < m; ++i) qtb[i] -= f * v[i];
  }

  const double lead = std::abs(diag[0]);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < k; ++j)
    if (lead > 0.0 && std::abs(diag[j]) > kRankTolerance * lead) ++rank;
  if (rank < k) throw SingularDesignError(rank, k);

  std::vector<double> z(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    double s = qtb[jj];
    for (std::size_t c = jj + 1; c < k; ++c) s -= a(jj, c) * z[c];
    z[jj] = s / diag[jj];
  }

  OlsFit fit;
  fit.coefficients.assign(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) fit.coefficients[perm[j]] = z[j] / scale[j];
  for (std::size_t i = k; i < m; ++i) fit.rss += qtb[i] * qtb[i];
  return fit;
}

std::vector<double> first_difference(std::span<const double> series) {
  if (series.size() < 2) throw InsufficientDataError("first difference needs at least 2 values");
  std::vector<double> out(series.size() - 1);
  for (std::size_t i = 0; i + 1 < series.size(); ++i) out[i] = series[i + 1] - series[i];
  return out;
}

AlignedPair first_difference(const AlignedPair& pair) {
  AlignedPair out;
  out.x = first_difference(pair.x);
  out.y = first_difference(pair.y);
  out.years.assign(pair.years.begin() + 1, pair.years.end());
  return out;
}

LagDesign build_lag_design(std::span<const double> x, std::span<const double> y, std::size_t lag) {
  if (lag < 1) throw DomainError("lag must be at least 1");
  if (x.size() != y.size()) throw DomainError("series differ in length");
  const std::size_t n = y.size();
  const std::size_t unrestricted_cols = 1 + 2 * lag;
  if (n <= lag || n - lag <= unrestricted_cols)
    throw InsufficientDataError("lag " + std::to_string(lag) + " needs more than " +
                                std::to_string(unrestricted_cols + lag) + " observations, got " +
                                std::to_string(n));

  LagDesign d;
  d.lag = lag;
  d.n_eff = n - lag;
  d.response.assign(y.begin() + static_cast<std::ptrdiff_t>(lag), y.end());
  d.restricted = Matrix(d.n_eff, 1 + lag);
  d.unrestricted = Matrix(d.n_eff, unrestricted_cols);
  for (std::size_t row = 0; row < d.n_eff; ++row) {
    const std::size_t t = row + lag;
    d.restricted(row, 0) = 1.0;
    d.unrestricted(row, 0) = 1.0;
    for (std::size_t l = 1; l <= lag; ++l) {
      d.restricted(row, l) = y[t - l];
      d.unrestricted(row, l) = y[t - l];
      d.unrestricted(row, lag + l) = x[t - l];
    }
  }
  return d;
}

double f_sf(double f, double d1, double d2) {
  if (!(d1 >= 1.0) || !(d2 >= 1.0)) throw DomainError("F distribution needs d1, d2 >= 1");
  if (!(f >= 0.0)) throw DomainError("F statistic must be non-negative");
  if (f == 0.0) return 1.0;
  if (std::isinf(f)) return 0.0;
  if (d1 == 1.0 && d2 == 1.0) return 2.0 / std::numbers::pi * std::atan(1.0 / std::sqrt(f));
  return regularized_incomplete_beta(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * f));
}

GrangerResult granger_test(const AlignedPair& pair, std::size_t lag) {
  if (pair.y.size() != pair.n() || pair.years.size() != pair.n())
    throw DomainError("pair sequences differ in length");
  for (std::size_t i = 1; i < pair.years.size(); ++i)
    if (pair.years[i] != pair.years[i - 1] + 1)
      throw NonContiguousError("gap between " + std::to_string(pair.years[i - 1]) + " and " +
                               std::to_string(pair.years[i]));

  const LagDesign design = build_lag_design(pair.x, pair.y, lag);
  OlsFit restricted, unrestricted;
  try {
    restricted = ols_rss(design.restricted, design.response);
    unrestricted = ols_rss(design.unrestricted, design.response);
  } catch (const SingularDesignError& e) {
    throw DegenerateInputError(std::string("lagged design is singular: ") + e.what());
  }

  GrangerResult r;
  r.lag = lag;
  r.n_eff = design.n_eff;
  r.rss_restricted = restricted.rss;
  // The unrestricted model nests the restricted one; rounding must not break that.
  r.rss_unrestricted = std::min(unrestricted.rss, restricted.rss);

  const double d1 = static_cast<double>(lag);
  const double d2 = static_cast<double>(design.n_eff - (1 + 2 * lag));
  if (r.rss_unrestricted == 0.0) {
    r.f_stat = r.rss_restricted > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    r.p_value = r.rss_restricted > 0.0 ? 0.0 : 1.0;
    return r;
  }
  r.f_stat = ((r.rss_restricted - r.rss_unrestricted) / d1) / (r.rss_unrestricted / d2);
  r.p_value = std::clamp(f_sf(r.f_stat, d1, d2), 0.0, 1.0);
  return r;
}

LagSweep lag_sweep(const AlignedPair& pair, std::size_t max_lag) {
  if (max_lag < 1) throw DomainError("max_lag must be at least 1");
  LagSweep sweep;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    try {
      sweep.results.push_back(granger_test(pair, lag));
    } catch (const InsufficientDataError& e) {
      if (lag == 1) throw;
      sweep.skipped.push_back({lag, e.kind(), e.what()});
    } catch (const DegenerateInputError& e) {
      if (lag == 1) throw;
      sweep.skipped.push_back({lag, e.kind(), e.what()});
    }
  }
  for (std::size_t i = 1; i < sweep.results.size(); ++i)
    if (sweep.results[i].p_value < sweep.results[sweep.best_index].p_value) sweep.best_index = i;
  return sweep;
}

}  // namespace burdenlab
