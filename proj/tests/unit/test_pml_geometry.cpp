#include <random>

#include <gtest/gtest.h>

#include "tepml/errors.hpp"
#include "tepml/pml_geometry.hpp"

namespace tepml {
namespace {

const Axes kL{1.0, 1.0, 1.0};

Vec3 random_on_box(const Axes& hw, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> face(0, 5);
  const int f = face(rng), a = f / 2;
  Vec3 x(u(rng) * hw[0], u(rng) * hw[1], u(rng) * hw[2]);
  x[a] = (f % 2 ? 1.0 : -1.0) * hw[a];
  return x;
}

TEST(RampShape, EndpointsAndSymmetry) {
  EXPECT_EQ(ramp_shape(0.0), 0.0);
  EXPECT_EQ(ramp_shape(-0.3), 0.0);
  EXPECT_EQ(ramp_shape(1.0), 1.0);
  EXPECT_EQ(ramp_shape(1.7), 1.0);
  for (double t : {0.05, 0.2, 0.37, 0.5, 0.81})
    EXPECT_NEAR(ramp_shape(t) + ramp_shape(1.0 - t), 1.0, 1e-15);
}

// Reference values from tests/oracles/oracle_values.py.
TEST(RampShape, IntegralMatchesHighPrecisionQuadrature) {
  EXPECT_NEAR(ramp_shape_integral(0.25), 0.0027601852110934675, 1e-14);
  EXPECT_NEAR(ramp_shape_integral(0.5), 0.068887474134463597, 1e-14);
  EXPECT_NEAR(ramp_shape_integral(0.8), 0.30066284970143087, 1e-14);
  EXPECT_NEAR(ramp_shape_integral(1.0), 0.5, 1e-14);
  EXPECT_EQ(ramp_shape_integral(0.0), 0.0);
}

TEST(PmlProfile, AbsorptionProfileShape) {
  const PmlProfile p = PmlProfile::with_ramp_fraction(kL, {1.0, 1.0, 1.0}, 1.5, 2.5);
  EXPECT_DOUBLE_EQ(p.lbar()[0], 1.5);
  EXPECT_EQ(p.alpha(0, 0.3), 0.0);
  EXPECT_EQ(p.alpha(0, 1.0), 0.0);
  EXPECT_EQ(p.alpha(1, 1.7), 1.5);
  EXPECT_EQ(p.alpha(2, -1.9), 1.5);
  EXPECT_NEAR(p.alpha(0, 1.25), 0.75, 1e-15);
  EXPECT_EQ(p.alpha(0, -1.2), p.alpha(0, 1.2));
}

TEST(PmlProfile, AntiderivativeDifferentiatesToProfile) {
  const PmlProfile p = PmlProfile::with_ramp_fraction(kL, {1.0, 1.0, 1.0}, 1.5, 2.5);
  const double h = 1e-5;
  for (double t : {-1.8, -1.3, 0.2, 1.1, 1.25, 1.49, 1.6, 1.95}) {
    const double fd = (p.alpha_antiderivative(0, t + h) - p.alpha_antiderivative(0, t - h)) / (2 * h);
    EXPECT_NEAR(fd, p.alpha(0, t), 1e-8) << "t = " << t;
  }
  EXPECT_NEAR(p.alpha_antiderivative(0, 2.0), 1.5 * (0.5 * 0.5 + 0.5), 1e-14);
  EXPECT_EQ(p.alpha_antiderivative(0, -1.7), -p.alpha_antiderivative(0, 1.7));
}

TEST(PmlProfile, RejectsInvalidGeometry) {
  EXPECT_THROW(PmlProfile(kL, {1, 1, 1}, {1.6, 1.5, 1.5}, 1.0, 2.0), InvalidGeometry);
  EXPECT_THROW(PmlProfile(kL, {1, 1, 1}, {1.0, 1.5, 1.5}, 1.0, 2.0), InvalidGeometry);
  EXPECT_THROW(PmlProfile(kL, {0, 1, 1}, {1.5, 1.5, 1.5}, 1.0, 2.0), InvalidGeometry);
  EXPECT_THROW(PmlProfile({-1, 1, 1}, {1, 1, 1}, {1.5, 1.5, 1.5}, 1.0, 2.0), InvalidGeometry);
  EXPECT_THROW(PmlProfile(kL, {1, 1, 1}, {1.5, 1.5, 1.5}, -1.0, 2.0), InvalidParameter);
  EXPECT_THROW(PmlProfile(kL, {1, 1, 1}, {1.5, 1.5, 1.5}, 1.0, 0.5), InvalidParameter);
  EXPECT_NO_THROW(PmlProfile(kL, {1, 1, 1}, {1.5, 1.5, 1.5}, 0.0, 1.0));
}

TEST(Stretch, IdentityInsideBoxAndFactorsInLayer) {
  const PmlProfile p = PmlProfile::with_ramp_fraction(kL, {1.0, 1.0, 1.0}, 1.0, 2.0);
  const StretchedPoint in = stretch(p, Vec3(0.3, -0.99, 1.0));
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(in.xt[j], cplx(in.x[j]));
    EXPECT_EQ(in.s[j], cplx(1.0));
  }
  const PmlMatrices m = pml_matrices(p, Vec3(0.2, 1.7, -1.2));
  const CVec3 s = stretch(p, Vec3(0.2, 1.7, -1.2)).s;
  EXPECT_NEAR(std::abs(s[1] - cplx(3.0, 1.0)), 0.0, 1e-15);
  for (int j = 0; j < 3; ++j) {
    EXPECT_NEAR(std::abs(m.A[j] * s[j] - m.J), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(m.K[j] * s[j] - m.A[j]), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(m.B[j] * s[j] - 1.0), 0.0, 1e-15);
  }
}

TEST(ComplexDistance, BoundsForBoundaryPairs) {
  const PmlProfile p = PmlProfile::with_ramp_fraction(kL, {1.0, 1.0, 1.0}, 1.0, 2.0);
  EXPECT_NEAR(distance_ratio_bound(p), std::sqrt(10.0), 1e-15);
  std::mt19937_64 rng(3);
  const double r0 = r0_constant(p);
  for (int t = 0; t < 2000; ++t) {
    const Vec3 x = random_on_box(p.outer(), rng), y = random_on_box(kL, rng);
    const cplx d = complex_distance(p, x, y);
    const double dist = (x - y).norm();
    EXPECT_GE(std::abs(d), dist * (1.0 - 1e-14));
    EXPECT_LE(std::abs(d), distance_ratio_bound(p) * dist * (1.0 + 1e-14));
    EXPECT_GE(d.imag(), im_distance_lower_bound(p, x, y) * (1.0 - 1e-12));
    EXPECT_GE(im_distance_lower_bound(p, x, y), r0 * p.alpha0() * p.dmin());
  }
}

TEST(ComplexDistance, ReducesToEuclideanWithoutAbsorption) {
  const PmlProfile p = PmlProfile::with_ramp_fraction(kL, {1.0, 1.0, 1.0}, 0.0, 2.0);
  const Vec3 x(1.9, -0.4, 0.6), y(-1.0, 0.3, 0.2);
  EXPECT_EQ(complex_distance(p, x, y), cplx((x - y).norm()));
  EXPECT_THROW(complex_distance(p, x, x), Singularity);
  EXPECT_THROW(im_distance_lower_bound(p, x, x), Singularity);
}

TEST(R0Constant, DefaultGeometry) {
  const PmlProfile p = PmlProfile::with_ramp_fraction(kL, {1.0, 1.0, 1.0}, 1.0, 2.5);
  EXPECT_NEAR(r0_constant(p), 0.75 / std::sqrt(27.0), 1e-15);
  const PmlProfile q = PmlProfile::with_ramp_fraction(kL, {3.0, 3.0, 3.0}, 1.0, 2.5);
  EXPECT_NEAR(r0_constant(q), 2.25 / std::sqrt(75.0), 1e-15);
}

}  // namespace
}  // namespace tepml
