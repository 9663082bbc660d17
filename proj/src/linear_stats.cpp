#include "burdenlab/linear_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "burdenlab/errors.hpp"
#include "burdenlab/special_functions.hpp"

namespace burdenlab {

namespace {

bool is_constant(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e;
  return s / static_cast<double>(v.size());
}

}  // namespace

double t_sf(double t, double dof) {
  if (!(dof >= 1.0)) throw DomainError("t distribution needs dof >= 1");
  if (std::isnan(t)) throw DomainError("t statistic is NaN");
  if (t == 0.0) return 0.5;
  if (dof == 1.0) {
    // Cauchy tail; the reciprocal form avoids cancellation for large t.
    if (t > 0.0) return std::atan(1.0 / t) / std::numbers::pi;
    return 0.5 - std::atan(t) / std::numbers::pi;
  }
  if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
  const double tail = 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
  return t > 0 ? tail : 1.0 - tail;
}

PearsonResult pearson(const AlignedPair& pair) {
  const std::size_t n = pair.n();
  if (pair.y.size() != n) throw DomainError("pair sequences differ in length");
  if (n < 3) throw InsufficientDataError("pearson needs at least 3 points, got " + std::to_string(n));
  if (is_constant(pair.x) || is_constant(pair.y))
    throw DegenerateInputError("pearson is undefined for a constant sequence (zero variance)");

  const double mx = mean(pair.x);
  const double my = mean(pair.y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = pair.x[i] - mx;
    const double dy = pair.y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);

  PearsonResult out{r, n, 0.0};
  if (std::abs(r) < 1.0) {
    const double dof = static_cast<double>(n - 2);
    const double t = std::abs(r) * std::sqrt(dof / (1.0 - r * r));
    out.p_value = std::min(1.0, 2.0 * t_sf(t, dof));
  }
  return out;
}

}  // namespace burdenlab
