#pragma once

#include <vector>

namespace tepml {

struct GaussRule {
  std::vector<double> nodes;    ///< on [-1, 1], ascending
  std::vector<double> weights;  ///< sum to 2
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Gauss rule mapped to [a, b].
GaussRule gauss_legendre(int n, double a, double b);

}  // namespace tepml
