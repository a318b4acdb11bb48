#pragma once

/**
 * @file pml_geometry.hpp
 * @brief Uniaxial complex coordinate stretching on a box, the coefficient
 * matrices of the stretched operators and the complex distance.
 *
 * Axes are indexed 0, 1, 2. The box B1 = prod [-l_j, l_j] is unstretched, the
 * absorption alpha_j ramps smoothly from 0 at |x_j| = l_j to alpha0 at
 * |x_j| = lbar_j and stays constant up to the outer boundary |x_j| = l_j + d_j.
 */

#include <array>

#include "tepml/types.hpp"

namespace tepml {

using Axes = std::array<double, 3>;

class PmlProfile {
 public:
  /// Throws InvalidGeometry unless l_j > 0, d_j > 0, l_j < lbar_j <= l_j + d_j
  /// and lbar_j - l_j <= min_j d_j / 2; throws InvalidParameter unless
  /// alpha0 >= 0 and zeta >= 1. alpha0 = 0 gives the unstretched box.
  PmlProfile(const Axes& l, const Axes& d, const Axes& lbar, double alpha0, double zeta);

  /// lbar_j = l_j + ramp_fraction * min_j d_j.
  static PmlProfile with_ramp_fraction(const Axes& l, const Axes& d, double alpha0, double zeta,
                                       double ramp_fraction = 0.5);

  const Axes& l() const { return l_; }
  const Axes& d() const { return d_; }
  const Axes& lbar() const { return lbar_; }
  Axes outer() const { return {l_[0] + d_[0], l_[1] + d_[1], l_[2] + d_[2]}; }
  double alpha0() const { return alpha0_; }
  double zeta() const { return zeta_; }
  cplx z() const { return {zeta_, 1.0}; }
  /// Scalar layer thickness min_j d_j.
  double dmin() const;

  /// Absorption profile alpha_j(t), even in t.
  double alpha(int axis, double t) const;

  /// int_0^t alpha_j(s) ds, odd in t.
  double alpha_antiderivative(int axis, double t) const;

  /// int_{l_j}^{lbar_j} alpha_j.
  double ramp_integral(int axis) const { return ramp_integral_[axis]; }

  /// Same profile with alpha0 replaced (used for reduction checks).
  PmlProfile with_alpha0(double alpha0) const;

 private:
  Axes l_, d_, lbar_;
  double alpha0_, zeta_;
  Axes ramp_integral_;
};

/// Smooth step rho(tau) = h(tau) / (h(tau) + h(1 - tau)), h(s) = exp(-1/s).
double ramp_shape(double tau);

/// int_0^tau ramp_shape, tau in [0, 1], from a cached piecewise Chebyshev
/// interpolant accurate to about 1e-15.
double ramp_shape_integral(double tau);

struct StretchedPoint {
  Vec3 x;
  CVec3 xt;  ///< stretched coordinates
  CVec3 s;   ///< d xt_j / d x_j
};

struct PmlMatrices {
  cplx J;    ///< s1 s2 s3
  CVec3 A;   ///< diagonal of J (grad F)^{-1}
  CVec3 K;   ///< diagonal of J (grad F)^{-1} (grad F)^{-T}
  CVec3 B;   ///< diagonal of (grad F)^{-1}
};

StretchedPoint stretch(const PmlProfile& profile, const Vec3& x);

PmlMatrices pml_matrices(const PmlProfile& profile, const Vec3& x);

/// Coefficient matrices for given stretching factors.
PmlMatrices pml_matrices_from_factors(const CVec3& s);

/// Principal square root of sum_j (xt_j - yt_j)^2. Throws Singularity for x == y.
cplx complex_distance(const PmlProfile& profile, const Vec3& x, const Vec3& y);

/// Lower bound on Im complex_distance built from the alpha integrals between
/// x and y. Throws Singularity for x == y.
double im_distance_lower_bound(const PmlProfile& profile, const Vec3& x, const Vec3& y);

/// Upper bound sqrt((1 + zeta alpha0)^2 + alpha0^2) of |d| / |x - y|.
double distance_ratio_bound(const PmlProfile& profile);

/// r0 = (3/4) d / sqrt(sum_j (2 l_j + d_j)^2) with d = min_j d_j.
double r0_constant(const PmlProfile& profile);

}  // namespace tepml
