#include "tepml/fundsol.hpp"

#include <algorithm>
#include <cmath>

#include "tepml/errors.hpp"

namespace tepml {

namespace {

using Block = FundamentalCoefficients::Block;

int block_of(int i, int j) {
  if (i < 3 && j < 3) return Block::kElastic;
  if (i == 3 && j < 3) return Block::kThermalRow;
  if (i < 3 && j == 3) return Block::kThermalColumn;
  return Block::kThermal;
}

cplx complex_radius(const CVec3& z) {
  cplx r = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
  if (r.real() < 0.0) r = -r;
  return r;
}

void check_separation(double norm, const KernelContext& ctx) {
  if (!(norm >= ctx.guard_radius))
    throw Singularity("kernel evaluated at (numerically) coincident points");
}

}  // namespace

FundamentalCoefficients fundamental_coefficients(const MaterialParams& p, const WaveNumbers& w) {
  FundamentalCoefficients fc;
  const cplx l1s = w.l1 * w.l1, l2s = w.l2 * w.l2;
  const cplx diff = l2s - l1s;
  const cplx kp2 = p.kp2();
  const cplx q = p.q();
  const double two_pi = 2.0 * kPi;
  const std::array<cplx, 2> ls{l1s, l2s};
  for (int l = 0; l < 2; ++l) {
    const double sign = (l == 0) ? -1.0 : 1.0;  // (-1)^l with l = 1, 2
    fc.alpha[l] = sign * (1.0 - q / ls[l]) / (two_pi * p.p_modulus() * diff);
    fc.beta[l] = sign * (ls[l] - kp2) / (two_pi * diff);
    fc.gamma[l] = sign / (two_pi * p.p_modulus() * diff);
  }
  fc.alpha[2] = -1.0 / (two_pi * p.rho * p.omega * p.omega);
  fc.beta[2] = 0.0;
  fc.gamma[2] = 0.0;

  // Radial form. Expanding d_i d_j e = delta_ij f'/r + z_i z_j (f''/r^2 - f'/r^3)
  // and d_i e = z_i f'/r gives the constants below.
  for (int l = 0; l < 3; ++l) {
    auto& el = fc.c[Block::kElastic];
    el[0][l] = (l == 2) ? cplx(1.0 / (two_pi * p.lame_mu)) : cplx(0.0);
    el[3][l] = -fc.alpha[l];
    el[4][l] = -fc.alpha[l];
    fc.c[Block::kThermalRow][2][l] = I * p.omega * p.eta * fc.gamma[l];
    fc.c[Block::kThermalColumn][1][l] = -p.gamma * fc.gamma[l];
    fc.c[Block::kThermal][0][l] = fc.beta[l];
  }
  return fc;
}

std::array<cplx, 4> f_lambda_derivs(cplx lambda, cplx z, int n_max) {
  if (z == 0.0) throw Singularity("f_lambda evaluated at z = 0");
  if (n_max < 0 || n_max > 3) throw InvalidParameter("derivative order must be in 0..3");
  // P_{n+1} = (P_n' + i lambda P_n) z - (n + 1) P_n, stored as coefficients in z.
  std::array<std::array<cplx, 4>, 4> P{};
  P[0][0] = 1.0;
  for (int n = 0; n < n_max; ++n) {
    std::array<cplx, 4> next{};
    for (int k = 0; k <= n; ++k) {
      // (P' z) contributes k a_k z^k; i lambda P z shifts by one degree.
      next[k] += double(k) * P[n][k] - double(n + 1) * P[n][k];
      if (k + 1 <= 3) next[k + 1] += I * lambda * P[n][k];
    }
    P[n + 1] = next;
  }
  const cplx e = std::exp(I * lambda * z);
  std::array<cplx, 4> out{};
  cplx zpow = z;
  for (int n = 0; n <= n_max; ++n) {
    cplx poly = 0.0;
    for (int k = n; k >= 0; --k) poly = poly * z + P[n][k];
    out[n] = poly * e / zpow;
    zpow *= z;
  }
  return out;
}

KernelContext KernelContext::make(const MaterialParams& params) {
  KernelContext ctx;
  ctx.params = params;
  ctx.waves = characteristic_roots(params);
  ctx.coeffs = fundamental_coefficients(params, ctx.waves);
  return ctx;
}

CMat4 eval_phi(const Vec3& xmy, const KernelContext& ctx) {
  const double r = xmy.norm();
  check_separation(r, ctx);
  const auto& p = ctx.params;
  const auto& fc = ctx.coeffs;
  const auto lam = ctx.wavenumbers();

  std::array<cplx, 3> e{}, de{}, d2e{};
  for (int l = 0; l < 3; ++l) {
    const auto f = f_lambda_derivs(lam[l], r, 2);
    e[l] = f[0];
    de[l] = f[1];
    d2e[l] = f[2];
  }
  // d_i g(r) = x_i/r g';  d_i d_j g(r) = x_i x_j/r^2 g'' + (delta_ij/r - x_i x_j/r^3) g'
  auto d1 = [&](int l, int i) { return xmy[i] / r * de[l]; };
  auto d2 = [&](int l, int i, int j) {
    const double xx = xmy[i] * xmy[j];
    return xx / (r * r) * d2e[l] + ((i == j ? 1.0 : 0.0) / r - xx / (r * r * r)) * de[l];
  };

  CMat4 phi = CMat4::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      cplx v = 0.0;
      for (int l = 0; l < 3; ++l) {
        if (i == j && l == 2) v += e[l] / (2.0 * kPi * p.lame_mu);
        v -= fc.alpha[l] * d2(l, i, j);
      }
      phi(i, j) = v;
    }
  for (int j = 0; j < 3; ++j) {
    cplx row = 0.0, col = 0.0;
    for (int l = 0; l < 3; ++l) {
      row += fc.gamma[l] * d1(l, j);
      col += fc.gamma[l] * d1(l, j);
    }
    phi(3, j) = I * p.omega * p.eta * row;
    phi(j, 3) = -p.gamma * col;
  }
  cplx corner = 0.0;
  for (int l = 0; l < 3; ++l) corner += fc.beta[l] * e[l];
  phi(3, 3) = corner;
  return phi;
}

CMat4 eval_phi_radial(const CVec3& z, const KernelContext& ctx) {
  check_separation(std::sqrt(z.squaredNorm()), ctx);
  const cplx r = complex_radius(z);
  if (r == 0.0) throw Singularity("complex distance vanishes");
  const auto lam = ctx.wavenumbers();
  std::array<std::array<cplx, 4>, 3> f;
  for (int l = 0; l < 3; ++l) f[l] = f_lambda_derivs(lam[l], r, 2);

  CMat4 phi = CMat4::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const auto& c = ctx.coeffs.c[block_of(i, j)];
      const double dij = (i == j) ? 1.0 : 0.0;
      const cplx zi = (i < 3) ? z[i] : cplx(0.0);
      const cplx zj = (j < 3) ? z[j] : cplx(0.0);
      cplx v = 0.0;
      for (int l = 0; l < 3; ++l) {
        const cplx fp_r = f[l][1] / r;
        v += c[0][l] * dij * f[l][0] + c[1][l] * zi * fp_r + c[2][l] * zj * fp_r +
             c[3][l] * zi * zj * (f[l][2] / (r * r) - f[l][1] / (r * r * r)) + c[4][l] * dij * fp_r;
      }
      phi(i, j) = v;
    }
  return phi;
}

std::array<CMat4, 3> eval_phi_gradient(const CVec3& z, const KernelContext& ctx) {
  check_separation(std::sqrt(z.squaredNorm()), ctx);
  const cplx r = complex_radius(z);
  if (r == 0.0) throw Singularity("complex distance vanishes");
  const auto& p = ctx.params;
  const auto& fc = ctx.coeffs;
  const auto lam = ctx.wavenumbers();

  // g1 = f'/r, g2 = (g1)'/r, g3 = (g2)'/r
  std::array<cplx, 3> g1, g2, g3;
  for (int l = 0; l < 3; ++l) {
    const auto f = f_lambda_derivs(lam[l], r, 3);
    const cplx r2 = r * r, r3 = r2 * r;
    g1[l] = f[1] / r;
    g2[l] = f[2] / r2 - f[1] / r3;
    g3[l] = f[3] / r3 - 3.0 * f[2] / (r2 * r2) + 3.0 * f[1] / (r3 * r2);
  }
  auto kd = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  std::array<CMat4, 3> grad;
  for (int k = 0; k < 3; ++k) {
    CMat4 g = CMat4::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        cplx v = 0.0;
        for (int l = 0; l < 3; ++l) {
          if (i == j && l == 2) v += z[k] * g1[l] / (2.0 * kPi * p.lame_mu);
          const cplx d3 =
              (kd(i, j) * z[k] + kd(i, k) * z[j] + kd(j, k) * z[i]) * g2[l] + z[i] * z[j] * z[k] * g3[l];
          v -= fc.alpha[l] * d3;
        }
        g(i, j) = v;
      }
    for (int j = 0; j < 3; ++j) {
      cplx s = 0.0;
      for (int l = 0; l < 3; ++l) s += fc.gamma[l] * (kd(j, k) * g1[l] + z[j] * z[k] * g2[l]);
      g(3, j) = I * p.omega * p.eta * s;
      g(j, 3) = -p.gamma * s;
    }
    cplx corner = 0.0;
    for (int l = 0; l < 3; ++l) corner += fc.beta[l] * z[k] * g1[l];
    g(3, 3) = corner;
    grad[k] = g;
  }
  return grad;
}

CMat4 eval_phi_stretched(const Vec3& x, const Vec3& y, const PmlProfile& profile,
                         const KernelContext& ctx) {
  check_separation((x - y).norm(), ctx);
  const CVec3 z = stretch(profile, x).xt - stretch(profile, y).xt;
  return eval_phi_radial(z, ctx);
}

CMat4 apply_stress_operator(const Vec3& x, const Vec3& y, const Vec3& nu, const KernelContext& ctx,
                            const PmlProfile* profile) {
  check_separation((x - y).norm(), ctx);
  CVec3 z;
  CVec3 sy = CVec3::Ones();
  CMat4 phi;
  if (profile) {
    const StretchedPoint sx = stretch(*profile, x), syp = stretch(*profile, y);
    z = sx.xt - syp.xt;
    sy = syp.s;
    phi = eval_phi_radial(z, ctx);
  } else {
    z = (x - y).cast<cplx>();
    phi = eval_phi(x - y, ctx);
  }
  const auto dphi = eval_phi_gradient(z, ctx);
  // derivative with respect to y_m of Phi(xt - yt)
  std::array<CMat4, 3> G;
  for (int m = 0; m < 3; ++m) G[m] = -sy[m] * dphi[m];

  const auto& p = ctx.params;
  CMat4 D;
  for (int k = 0; k < 4; ++k) {
    cplx div = 0.0;
    for (int m = 0; m < 3; ++m) div += G[m](k, m);
    for (int j = 0; j < 3; ++j) {
      cplx normal_deriv = 0.0, transposed = 0.0;
      for (int m = 0; m < 3; ++m) {
        normal_deriv += nu[m] * G[m](k, j);
        transposed += nu[m] * G[j](k, m);
      }
      D(k, j) = p.lame_lambda * nu[j] * div + p.lame_mu * (normal_deriv + transposed) -
                I * p.omega * p.eta * nu[j] * phi(k, 3);
    }
    cplx dn = 0.0;
    for (int m = 0; m < 3; ++m) dn += nu[m] * G[m](k, 3);
    D(k, 3) = dn;
  }
  return D;
}

CVec4 apply_R(const CVec4& value, const CGrad4& grad, const Vec3& nu, const MaterialParams& p) {
  const cplx div = grad(0, 0) + grad(1, 1) + grad(2, 2);
  CVec4 out;
  for (int i = 0; i < 3; ++i) {
    cplx t = p.lame_lambda * div * nu[i] - p.gamma * value[3] * nu[i];
    for (int j = 0; j < 3; ++j) t += p.lame_mu * (grad(i, j) + grad(j, i)) * nu[j];
    out[i] = t;
  }
  out[3] = grad(3, 0) * nu[0] + grad(3, 1) * nu[1] + grad(3, 2) * nu[2];
  return out;
}

ColumnField phi_column(const Vec3& x, const Vec3& y0, int k, const KernelContext& ctx) {
  if (k < 0 || k > 3) throw InvalidParameter("column index must be in 0..3");
  const Vec3 r = x - y0;
  ColumnField out;
  out.value = eval_phi(r, ctx).col(k);
  const auto g = eval_phi_gradient(r.cast<cplx>(), ctx);
  for (int m = 0; m < 3; ++m)
    for (int c = 0; c < 4; ++c) out.grad(c, m) = g[m](c, k);
  return out;
}

double pde_residual(const Vec3& x, const Vec3& y0, int k, const MaterialParams& op,
                    const KernelContext& phi_ctx, double h) {
  if ((x - y0).norm() <= 10.0 * h)
    throw FdUnreliable("finite-difference point too close to the source");
  auto U = [&](const Vec3& pnt) -> CVec4 { return eval_phi(pnt - y0, phi_ctx).col(k); };
  auto shifted = [&](int a, double ta, int b = 0, double tb = 0.0) {
    Vec3 q = x;
    q[a] += ta;
    q[b] += tb;
    return U(q);
  };
  // fourth-order first derivative along axis a of any field sampler
  static constexpr double w1[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
  static constexpr double o1[4] = {-2.0, -1.0, 1.0, 2.0};
  const CVec4 u0 = U(x);

  // second derivatives d_a d_b U
  std::array<std::array<CVec4, 3>, 3> H;
  for (int a = 0; a < 3; ++a) {
    CVec4 s = -30.0 * u0;
    s += 16.0 * (shifted(a, h) + shifted(a, -h)) - (shifted(a, 2 * h) + shifted(a, -2 * h));
    H[a][a] = s / (12.0 * h * h);
    for (int b = a + 1; b < 3; ++b) {
      CVec4 m = CVec4::Zero();
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m += w1[i] * w1[j] * shifted(a, o1[i] * h, b, o1[j] * h);
      H[a][b] = H[b][a] = m / (h * h);
    }
  }
  std::array<CVec4, 3> D;
  for (int a = 0; a < 3; ++a) {
    CVec4 s = CVec4::Zero();
    for (int i = 0; i < 4; ++i) s += w1[i] * shifted(a, o1[i] * h);
    D[a] = s / h;
  }

  // Residual of each equation relative to the sum of its term magnitudes;
  // equations whose terms are negligible against the others are skipped.
  const cplx rho_w2 = op.rho * op.omega * op.omega;
  std::array<double, 4> res{}, scl{};
  const cplx div = D[0][0] + D[1][1] + D[2][2];
  for (int i = 0; i < 3; ++i) {
    const cplx lap = H[0][0][i] + H[1][1][i] + H[2][2][i];
    const cplx grad_div = H[i][0][0] + H[i][1][1] + H[i][2][2];
    const cplx t1 = op.lame_mu * lap, t2 = (op.lame_lambda + op.lame_mu) * grad_div,
               t3 = rho_w2 * u0[i], t4 = -op.gamma * D[i][3];
    res[i] = std::abs(t1 + t2 + t3 + t4);
    scl[i] = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4);
  }
  {
    const cplx lap = H[0][0][3] + H[1][1][3] + H[2][2][3];
    const cplx t1 = lap, t2 = op.q() * u0[3], t3 = I * op.omega * op.eta * div;
    res[3] = std::abs(t1 + t2 + t3);
    scl[3] = std::abs(t1) + std::abs(t2) + std::abs(t3);
  }
  const double top = *std::max_element(scl.begin(), scl.end());
  double worst = 0.0;
  for (int e = 0; e < 4; ++e)
    if (scl[e] > 1e-8 * top) worst = std::max(worst, res[e] / scl[e]);
  return worst;
}

}  // namespace tepml
