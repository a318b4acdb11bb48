#include "tepml/pml_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tepml/errors.hpp"
#include "tepml/quadrature.hpp"

namespace tepml {

namespace {

double bump_h(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

// Piecewise Chebyshev interpolant of int_0^tau ramp_shape on [0, 1].
class RampIntegralTable {
 public:
  static constexpr int kPanels = 32;
  static constexpr int kDegree = 16;

  RampIntegralTable() {
    const int n = kDegree + 1;
    cheb_.resize(n);
    bary_.resize(n);
    for (int k = 0; k < n; ++k) {
      cheb_[k] = -std::cos(kPi * k / kDegree);  // ascending on [-1, 1]
      bary_[k] = ((k % 2) ? -1.0 : 1.0) * ((k == 0 || k == kDegree) ? 0.5 : 1.0);
    }
    values_.assign(kPanels * n, 0.0);
    double start_value = 0.0;
    for (int p = 0; p < kPanels; ++p) {
      const double a = double(p) / kPanels, b = double(p + 1) / kPanels;
      double prev_t = a, acc = start_value;
      for (int k = 0; k < n; ++k) {
        const double t = a + 0.5 * (cheb_[k] + 1.0) * (b - a);
        if (t > prev_t) {
          const GaussRule g = gauss_legendre(24, prev_t, t);
          for (std::size_t i = 0; i < g.nodes.size(); ++i) acc += g.weights[i] * ramp_shape(g.nodes[i]);
        }
        values_[p * n + k] = acc;
        prev_t = t;
      }
      start_value = acc;
    }
  }

  double operator()(double tau) const {
    if (tau <= 0.0) return 0.0;
    const int n = kDegree + 1;
    if (tau >= 1.0) return values_[(kPanels - 1) * n + kDegree];
    const int p = std::min(int(tau * kPanels), kPanels - 1);
    const double a = double(p) / kPanels, b = double(p + 1) / kPanels;
    const double x = 2.0 * (tau - a) / (b - a) - 1.0;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
      const double diff = x - cheb_[k];
      if (diff == 0.0) return values_[p * n + k];
      const double w = bary_[k] / diff;
      num += w * values_[p * n + k];
      den += w;
    }
    return num / den;
  }

 private:
  std::vector<double> cheb_, bary_, values_;
};

const RampIntegralTable& ramp_table() {
  static const RampIntegralTable table;
  return table;
}

}  // namespace

double ramp_shape(double tau) {
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  const double h0 = bump_h(tau), h1 = bump_h(1.0 - tau);
  return h0 / (h0 + h1);
}

double ramp_shape_integral(double tau) { return ramp_table()(tau); }

PmlProfile::PmlProfile(const Axes& l, const Axes& d, const Axes& lbar, double alpha0, double zeta)
    : l_(l), d_(d), lbar_(lbar), alpha0_(alpha0), zeta_(zeta) {
  for (int j = 0; j < 3; ++j) {
    if (!(l_[j] > 0.0)) throw InvalidGeometry("box half-widths l_j must be positive");
    if (!(d_[j] > 0.0)) throw InvalidGeometry("layer thicknesses d_j must be positive");
    if (!(lbar_[j] > l_[j] && lbar_[j] <= l_[j] + d_[j]))
      throw InvalidGeometry("ramp end must satisfy l_j < lbar_j <= l_j + d_j");
  }
  const double dm = dmin();
  for (int j = 0; j < 3; ++j)
    if (lbar_[j] - l_[j] > 0.5 * dm * (1.0 + 1e-14))
      throw InvalidGeometry("ramp width lbar_j - l_j must not exceed min_j d_j / 2");
  if (!(alpha0_ >= 0.0) || !std::isfinite(alpha0_))
    throw InvalidParameter("alpha0 must be nonnegative");
  if (!(zeta_ >= 1.0) || !std::isfinite(zeta_)) throw InvalidParameter("zeta must be >= 1");
  const double unit = ramp_shape_integral(1.0);
  for (int j = 0; j < 3; ++j) ramp_integral_[j] = alpha0_ * (lbar_[j] - l_[j]) * unit;
}

PmlProfile PmlProfile::with_ramp_fraction(const Axes& l, const Axes& d, double alpha0, double zeta,
                                          double ramp_fraction) {
  const double dm = std::min({d[0], d[1], d[2]});
  return PmlProfile(l, d, {l[0] + ramp_fraction * dm, l[1] + ramp_fraction * dm,
                           l[2] + ramp_fraction * dm},
                    alpha0, zeta);
}

PmlProfile PmlProfile::with_alpha0(double alpha0) const {
  return PmlProfile(l_, d_, lbar_, alpha0, zeta_);
}

double PmlProfile::dmin() const { return std::min({d_[0], d_[1], d_[2]}); }

double PmlProfile::alpha(int axis, double t) const {
  const double a = std::abs(t);
  if (a <= l_[axis]) return 0.0;
  if (a >= lbar_[axis]) return alpha0_;
  return alpha0_ * ramp_shape((a - l_[axis]) / (lbar_[axis] - l_[axis]));
}

double PmlProfile::alpha_antiderivative(int axis, double t) const {
  const double a = std::abs(t);
  double v;
  if (a <= l_[axis]) {
    return 0.0;
  } else if (a >= lbar_[axis]) {
    v = ramp_integral_[axis] + alpha0_ * (a - lbar_[axis]);
  } else {
    const double w = lbar_[axis] - l_[axis];
    v = alpha0_ * w * ramp_shape_integral((a - l_[axis]) / w);
  }
  return t < 0.0 ? -v : v;
}

StretchedPoint stretch(const PmlProfile& profile, const Vec3& x) {
  StretchedPoint sp;
  sp.x = x;
  const cplx z = profile.z();
  for (int j = 0; j < 3; ++j) {
    sp.xt[j] = x[j] + z * profile.alpha_antiderivative(j, x[j]);
    sp.s[j] = 1.0 + z * profile.alpha(j, x[j]);
  }
  return sp;
}

PmlMatrices pml_matrices_from_factors(const CVec3& s) {
  PmlMatrices m;
  m.J = s[0] * s[1] * s[2];
  m.A = CVec3(s[1] * s[2], s[0] * s[2], s[0] * s[1]);
  m.B = CVec3(1.0 / s[0], 1.0 / s[1], 1.0 / s[2]);
  m.K = CVec3(s[1] * s[2] / s[0], s[0] * s[2] / s[1], s[0] * s[1] / s[2]);
  return m;
}

PmlMatrices pml_matrices(const PmlProfile& profile, const Vec3& x) {
  const cplx z = profile.z();
  CVec3 s;
  for (int j = 0; j < 3; ++j) s[j] = 1.0 + z * profile.alpha(j, x[j]);
  return pml_matrices_from_factors(s);
}

cplx complex_distance(const PmlProfile& profile, const Vec3& x, const Vec3& y) {
  if ((x - y).norm() == 0.0) throw Singularity("complex distance undefined for x == y");
  const CVec3 diff = stretch(profile, x).xt - stretch(profile, y).xt;
  const cplx r2 = diff[0] * diff[0] + diff[1] * diff[1] + diff[2] * diff[2];
  cplx r = std::sqrt(r2);
  if (r.real() < 0.0) r = -r;
  return r;
}

double im_distance_lower_bound(const PmlProfile& profile, const Vec3& x, const Vec3& y) {
  const double dist = (x - y).norm();
  if (dist == 0.0) throw Singularity("complex distance undefined for x == y");
  double num = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double integral =
        std::abs(profile.alpha_antiderivative(j, x[j]) - profile.alpha_antiderivative(j, y[j]));
    num += std::abs(x[j] - y[j]) * integral + profile.zeta() * integral * integral;
  }
  return num / ((1.0 + profile.zeta() * profile.alpha0()) * dist);
}

double distance_ratio_bound(const PmlProfile& profile) {
  const double za = 1.0 + profile.zeta() * profile.alpha0();
  return std::sqrt(za * za + profile.alpha0() * profile.alpha0());
}

double r0_constant(const PmlProfile& profile) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double w = 2.0 * profile.l()[j] + profile.d()[j];
    s += w * w;
  }
  return 0.75 * profile.dmin() / std::sqrt(s);
}

}  // namespace tepml
