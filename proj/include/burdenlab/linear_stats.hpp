#pragma once

#include <cstddef>

#include "burdenlab/panel_data.hpp"

namespace burdenlab {

struct PearsonResult {
  double r = 0.0;
  std::size_t n = 0;
  /// Two-sided.
  double p_value = 1.0;
};

/// Pearson correlation with a two-sided t-test on n - 2 degrees of freedom.
/// Throws InsufficientDataError for n < 3 and DegenerateInputError when
/// either sequence is constant.
PearsonResult pearson(const AlignedPair& pair);

/// Upper-tail probability P(T > t) of Student's t with `dof` degrees of freedom.
double t_sf(double t, double dof);

}  // namespace burdenlab
