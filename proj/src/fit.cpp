#include "tepml/fit.hpp"

#include <cmath>

#include "tepml/errors.hpp"

namespace tepml {

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw PreconditionFailed("fit: x and y differ in length");
  const std::size_t n = x.size();
  if (n < 2) throw PreconditionFailed("fit: at least 2 points required");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw PreconditionFailed("fit: abscissae are all equal");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = n;
  return f;
}

std::optional<LinearFit> fit_log_linear(const std::vector<double>& x, const std::vector<double>& err,
                                        std::size_t min_points) {
  if (x.size() != err.size()) throw PreconditionFailed("fit: x and y differ in length");
  if (x.size() < min_points || x.size() < 2) return std::nullopt;
  std::vector<double> y(err.size());
  for (std::size_t i = 0; i < err.size(); ++i) {
    if (!(err[i] > 0.0) || !std::isfinite(err[i]))
      throw PreconditionFailed("fit: errors must be positive and finite");
    y[i] = std::log(err[i]);
  }
  return least_squares(x, y);
}

FloorSplit split_pre_floor(const std::vector<double>& err, double factor) {
  if (err.empty()) throw PreconditionFailed("floor: no points");
  FloorSplit s;
  s.floor = err.back();
  for (std::size_t i = 0; i < err.size(); ++i)
    if (err[i] > factor * s.floor) s.pre_floor.push_back(i);
  return s;
}

}  // namespace tepml
