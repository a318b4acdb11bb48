#include <random>

#include <gtest/gtest.h>

#include "tepml/errors.hpp"
#include "tepml/fundsol.hpp"

namespace tepml {
namespace {

MaterialParams default_medium() {
  MaterialParams p;
  p.eta = 0.05;
  return p;
}

void expect_close(cplx a, cplx b, double rel) {
  EXPECT_LE(std::abs(a - b), rel * std::abs(b)) << a << " vs " << b;
}

// Reference values from tests/oracles/oracle_values.py.
TEST(FundamentalSolution, MatchesHighPrecisionReference) {
  const KernelContext ctx = KernelContext::make(default_medium());
  const CMat4 P = eval_phi(Vec3(0.3, -0.5, 0.7), ctx);
  expect_close(P(0, 0), {0.071961370483374123, 0.1000241543443607}, 1e-12);
  expect_close(P(0, 1), {-0.013014995599335113, -0.0013980081253177032}, 1e-12);
  expect_close(P(1, 2), {-0.030368323065115265, -0.0032620189590746408}, 1e-12);
  expect_close(P(3, 0), {0.00015958726327977642, -0.00026444032916403494}, 1e-11);
  expect_close(P(0, 3), {0.00052888065832806987, 0.00031917452655955284}, 1e-11);
  expect_close(P(3, 3), {0.073275059520503007, 0.055077637843096184}, 1e-12);
}

TEST(FundamentalSolution, RadialFormAgreesWithEntrywiseFormula) {
  const KernelContext ctx = KernelContext::make(default_medium());
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    const Vec3 x(u(rng), u(rng), u(rng));
    const CMat4 a = eval_phi(x, ctx), b = eval_phi_radial(x.cast<cplx>(), ctx);
    EXPECT_LE((a - b).norm(), 1e-12 * a.norm());
  }
}

TEST(FundamentalSolution, ParityAndCouplingStructure) {
  const KernelContext ctx = KernelContext::make(default_medium());
  const Vec3 x(0.4, 0.9, -0.3);
  const CMat4 a = eval_phi(x, ctx), b = eval_phi(-x, ctx);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool odd = (i == 3) != (j == 3);
      EXPECT_LE(std::abs(a(i, j) - (odd ? -b(i, j) : b(i, j))), 1e-14 * a.norm());
    }
  // elastic block symmetric
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_LE(std::abs(a(i, j) - a(j, i)), 1e-15 * a.norm());
  // Phi_4j / Phi_j4 = -i omega eta / gamma
  const cplx ratio = -I * ctx.params.omega * ctx.params.eta / ctx.params.gamma;
  for (int j = 0; j < 3; ++j) EXPECT_LE(std::abs(a(3, j) - ratio * a(j, 3)), 1e-14 * std::abs(a(3, j)));
}

TEST(FundamentalSolution, SatisfiesThePdeAwayFromTheSource) {
  MaterialParams p = default_medium();
  p.omega = 1.7;
  const KernelContext ctx = KernelContext::make(p);
  const Vec3 y0(0.1, -0.05, 0.02);
  for (const Vec3& x : {Vec3(0.8, 0.3, -0.5), Vec3(-1.2, 0.9, 0.4)})
    for (int k = 0; k < 4; ++k) EXPECT_LT(pde_residual(x, y0, k, p, ctx), 1e-6) << "column " << k;
}

TEST(FundamentalSolution, PerturbedKernelFailsThePde) {
  const MaterialParams p = default_medium();
  MaterialParams q = p;
  q.lame_mu *= 1.01;
  const KernelContext wrong = KernelContext::make(q);
  EXPECT_GT(pde_residual(Vec3(0.8, 0.3, -0.5), Vec3::Zero(), 0, p, wrong), 1e-3);
  EXPECT_THROW(pde_residual(Vec3(1e-3, 0, 0), Vec3::Zero(), 0, p, wrong), FdUnreliable);
}

TEST(FundamentalSolution, RadialDerivativesMatchFiniteDifferences) {
  const cplx lam(0.7, 0.3), z(1.3, 0.2);
  const auto f = f_lambda_derivs(lam, z, 3);
  const double h = 1e-4;
  for (int n = 0; n < 3; ++n) {
    const cplx fd = (f_lambda_derivs(lam, z + h, n)[n] - f_lambda_derivs(lam, z - h, n)[n]) / (2 * h);
    EXPECT_LE(std::abs(fd - f[n + 1]), 1e-7 * std::abs(f[n + 1]));
  }
  EXPECT_THROW(f_lambda_derivs(lam, 0.0, 1), Singularity);
  EXPECT_THROW(f_lambda_derivs(lam, z, 4), InvalidParameter);
}

TEST(FundamentalSolution, GradientMatchesFiniteDifferences) {
  const KernelContext ctx = KernelContext::make(default_medium());
  const CVec3 z(0.6, -0.2, 0.9);
  const auto g = eval_phi_gradient(z, ctx);
  const double h = 1e-5;
  for (int k = 0; k < 3; ++k) {
    CVec3 zp = z, zm = z;
    zp[k] += h;
    zm[k] -= h;
    const CMat4 fd = (eval_phi_radial(zp, ctx) - eval_phi_radial(zm, ctx)) / (2 * h);
    EXPECT_LE((fd - g[k]).norm(), 1e-7 * g[k].norm());
  }
}

TEST(FundamentalSolution, StretchedKernelReducesWithoutAbsorption) {
  const KernelContext ctx = KernelContext::make(default_medium());
  const PmlProfile p = PmlProfile::with_ramp_fraction({1, 1, 1}, {1, 1, 1}, 0.0, 2.5);
  const Vec3 x(1.8, -0.3, 1.2), y(0.9, 1.0, -1.0);
  EXPECT_LE((eval_phi_stretched(x, y, p, ctx) - eval_phi(x - y, ctx)).norm(), 1e-14);
}

TEST(FundamentalSolution, GuardsTheSingularity) {
  const KernelContext ctx = KernelContext::make(default_medium());
  EXPECT_THROW(eval_phi(Vec3::Zero(), ctx), Singularity);
  EXPECT_THROW(eval_phi(Vec3(1e-10, 0, 0), ctx), Singularity);
}

TEST(Traction, ReducesToNormalStressAndFlux) {
  const MaterialParams p = default_medium();
  CGrad4 g = CGrad4::Zero();
  g(0, 0) = 1.0;  // du0/dx0
  g(3, 2) = 2.0;  // dp/dx2
  const CVec4 v(0.0, 0.0, 0.0, 0.5);
  const CVec4 r = apply_R(v, g, Vec3(1, 0, 0), p);
  EXPECT_NEAR(std::abs(r[0] - (p.lame_lambda + 2 * p.lame_mu - p.gamma * 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r[3]), 0.0, 1e-15);
  const CVec4 t = apply_R(v, g, Vec3(0, 0, 1), p);
  EXPECT_NEAR(std::abs(t[2] - (p.lame_lambda - p.gamma * 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t[3] - 2.0), 0.0, 1e-15);
}

}  // namespace
}  // namespace tepml
