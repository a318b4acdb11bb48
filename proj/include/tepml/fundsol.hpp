#pragma once

/**
 * @file fundsol.hpp
 * @brief 4x4 fundamental solution of the time-harmonic thermoelastic operator
 *
 *   L = [ (mu Lap + (lambda+mu) grad div + rho omega^2) I ,  -gamma grad ]
 *       [  i omega eta div                                ,  Lap + q     ]
 *
 * normalized so that L Phi = -2 delta I. Each entry is a combination of the
 * radial functions e_l(r) = exp(i l_l r) / r, l = 1, 2, 3:
 *
 *   Phi_ij = sum_l [ delta_ij delta_3l / (2 pi mu) e_l - alpha_l d_i d_j e_l ]
 *   Phi_4j = i omega eta sum_l gamma_l d_j e_l
 *   Phi_i4 = -gamma      sum_l gamma_l d_i e_l
 *   Phi_44 = sum_l beta_l e_l
 *
 * In the radial form every entry reads
 *
 *   sum_l [ c1 delta_ij f + c2 z_i/r f' + c3 z_j/r f'
 *           + c4 (z_i z_j/r^2 f'' - z_i z_j/r^3 f') + c5 delta_ij f'/r ]
 *
 * with f = f_{l_l}(r), which extends to complex separation vectors z and
 * r = sqrt(z . z) and gives the stretched kernel Phi(xt - yt).
 */

#include <array>

#include "tepml/material.hpp"
#include "tepml/pml_geometry.hpp"
#include "tepml/types.hpp"

namespace tepml {

struct FundamentalCoefficients {
  enum Block { kElastic = 0, kThermalRow = 1, kThermalColumn = 2, kThermal = 3 };

  std::array<cplx, 3> alpha{};
  std::array<cplx, 3> beta{};
  std::array<cplx, 3> gamma{};
  /// c[block][k][l]: radial-form constant c_{k+1} of wavenumber l in block.
  std::array<std::array<std::array<cplx, 3>, 5>, 4> c{};
};

FundamentalCoefficients fundamental_coefficients(const MaterialParams& params,
                                                 const WaveNumbers& waves);

/// f, f', ..., f^(n_max) of f(z) = exp(i lambda z) / z, n_max <= 3.
std::array<cplx, 4> f_lambda_derivs(cplx lambda, cplx z, int n_max);

/// Everything needed to evaluate kernels for one medium.
struct KernelContext {
  MaterialParams params;
  WaveNumbers waves;
  FundamentalCoefficients coeffs;
  /// Separations below this length raise Singularity.
  double guard_radius = 1e-8;

  static KernelContext make(const MaterialParams& params);
  const std::array<cplx, 3> wavenumbers() const { return {waves.l1, waves.l2, waves.l3}; }
};

/// Phi(x - y) from the entrywise formulas with the radial chain rule.
CMat4 eval_phi(const Vec3& x_minus_y, const KernelContext& ctx);

/// Phi from the radial form at a (possibly complex) separation vector.
CMat4 eval_phi_radial(const CVec3& z, const KernelContext& ctx);

/// d/dz_k Phi at a (possibly complex) separation vector, k = 0, 1, 2.
std::array<CMat4, 3> eval_phi_gradient(const CVec3& z, const KernelContext& ctx);

/// Phi(xt - yt): the kernel with stretched coordinates.
CMat4 eval_phi_stretched(const Vec3& x, const Vec3& y, const PmlProfile& profile,
                         const KernelContext& ctx);

/// Double-layer kernel D(x, y) at a source point y with unit normal nu:
///   D_kj = lambda nu_j sum_m dy_m Phi_km + mu sum_m nu_m dy_m Phi_kj
///          + mu sum_m nu_m dy_j Phi_km - i omega eta nu_j Phi_k4   (j <= 3)
///   D_k4 = sum_m nu_m dy_m Phi_k4
/// so that (D f)(x) is the stress operator applied in y to the adjoint kernel.
/// With profile == nullptr the kernel is unstretched; otherwise y-derivatives
/// carry the factor s_k(y_k) of the stretched coordinate.
CMat4 apply_stress_operator(const Vec3& x, const Vec3& y, const Vec3& nu, const KernelContext& ctx,
                            const PmlProfile* profile = nullptr);

/// Generalized traction: rows 0-2 sigma(u) nu - gamma p nu, row 3 nu . grad p.
/// grad row c is the gradient of component c.
CVec4 apply_R(const CVec4& value, const CGrad4& grad, const Vec3& nu, const MaterialParams& params);

/// Value and gradient of the column field x -> Phi(x - y0) e_k.
struct ColumnField {
  CVec4 value;
  CGrad4 grad;
};
ColumnField phi_column(const Vec3& x, const Vec3& y0, int k, const KernelContext& ctx);

/// Relative residual of L applied to column k of Phi(. - y0) at x, with
/// fourth-order central differences of step h. The differentiated field is
/// built from `phi_ctx`, while L uses `op_params`, so that a perturbed kernel
/// can be checked against the true operator.
double pde_residual(const Vec3& x, const Vec3& y0, int k, const MaterialParams& op_params,
                    const KernelContext& phi_ctx, double h = 1e-3);

}  // namespace tepml
