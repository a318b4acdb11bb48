#pragma once

/**
 * @file fit.hpp
 * @brief Least-squares rate fits and discretization-floor splitting.
 */

#include <cstddef>
#include <optional>
#include <vector>

namespace tepml {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t points = 0;
};

/// Plain least squares y ~ slope x + intercept. Throws PreconditionFailed for
/// fewer than 2 points, mismatched sizes or identical abscissae.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Fit of log(err) against x. Returns nothing for fewer than min_points points;
/// throws PreconditionFailed for nonpositive errors.
std::optional<LinearFit> fit_log_linear(const std::vector<double>& x, const std::vector<double>& err,
                                        std::size_t min_points = 3);

/// Discretization floor and the points above it.
struct FloorSplit {
  double floor = 0.0;                  ///< error at the largest sweep value
  std::vector<std::size_t> pre_floor;  ///< indices with error > factor * floor
};

/// `err` must be ordered by increasing sweep value.
FloorSplit split_pre_floor(const std::vector<double>& err, double factor);

}  // namespace tepml
