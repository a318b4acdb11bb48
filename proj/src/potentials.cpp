#include "tepml/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tepml/errors.hpp"
#include "tepml/parallel.hpp"
#include "tepml/quadrature.hpp"

namespace tepml {

namespace {

int points_per_panel_for(int n) {
  for (int g = std::min(n, 4); g >= 2; --g)
    if (n % g == 0) return g;
  return n;
}

// Composite Gauss nodes on [-h, h] with m panels of g points.
GaussRule composite_rule(double h, int m, int g) {
  GaussRule out;
  for (int p = 0; p < m; ++p) {
    const double a = -h + 2.0 * h * p / m, b = -h + 2.0 * h * (p + 1) / m;
    const GaussRule r = gauss_legendre(g, a, b);
    out.nodes.insert(out.nodes.end(), r.nodes.begin(), r.nodes.end());
    out.weights.insert(out.weights.end(), r.weights.begin(), r.weights.end());
  }
  return out;
}

void check_targets(const SurfaceQuadrature& q, const std::vector<Vec3>& targets) {
  for (const auto& x : targets)
    if (distance_to_box_surface(q.half_widths, x) < q.panel_diameter)
      throw NearSingularQuadrature("potential target closer to the surface than one panel diameter");
}

void check_density(const BoundaryData& density) {
  if (!density.quad) throw InvalidParameter("boundary data without quadrature");
  if (density.values.size() != density.quad->size())
    throw InvalidParameter("boundary data size does not match its quadrature");
}

}  // namespace

double SurfaceQuadrature::area() const {
  double a = 0.0;
  for (double w : weights) a += w;
  return a;
}

SurfaceQuadrature build_surface_quadrature(const Axes& hw, int n_per_edge) {
  if (n_per_edge < 2) throw InvalidParameter("n_per_edge must be at least 2");
  for (double h : hw)
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidGeometry("box half-widths must be positive");
  SurfaceQuadrature q;
  q.half_widths = hw;
  q.n_per_edge = n_per_edge;
  q.points_per_panel = points_per_panel_for(n_per_edge);
  q.panels_per_edge = n_per_edge / q.points_per_panel;
  const int m = q.panels_per_edge, g = q.points_per_panel;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const GaussRule rb = composite_rule(hw[b], m, g), rc = composite_rule(hw[c], m, g);
    const double pb = 2.0 * hw[b] / m, pc = 2.0 * hw[c] / m;
    q.panel_diameter = std::max(q.panel_diameter, std::sqrt(pb * pb + pc * pc));
    for (int side = 0; side < 2; ++side) {
      const double sgn = side ? 1.0 : -1.0;
      for (std::size_t i = 0; i < rb.nodes.size(); ++i)
        for (std::size_t j = 0; j < rc.nodes.size(); ++j) {
          Vec3 x, nrm = Vec3::Zero();
          x[a] = sgn * hw[a];
          x[b] = rb.nodes[i];
          x[c] = rc.nodes[j];
          nrm[a] = sgn;
          q.nodes.push_back(x);
          q.weights.push_back(rb.weights[i] * rc.weights[j]);
          q.normals.push_back(nrm);
          q.face.push_back(2 * a + side);
        }
    }
  }
  return q;
}

BoundaryData::BoundaryData(std::shared_ptr<const SurfaceQuadrature> q, std::vector<CVec4> v)
    : quad(std::move(q)), values(std::move(v)) {
  check_density(*this);
  for (const auto& x : values)
    if (!x.allFinite()) throw InvalidParameter("boundary data must be finite");
}

BoundaryData BoundaryData::zeros(std::shared_ptr<const SurfaceQuadrature> q) {
  const std::size_t n = q->size();
  return BoundaryData(std::move(q), std::vector<CVec4>(n, CVec4::Zero()));
}

double distance_to_box_surface(const Axes& hw, const Vec3& x) {
  double outside = 0.0, inside = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j) {
    const double e = std::abs(x[j]) - hw[j];
    if (e > 0.0) outside += e * e;
    inside = std::min(inside, -e);
  }
  return outside > 0.0 ? std::sqrt(outside) : std::max(0.0, inside);
}

std::vector<CVec4> single_layer(const BoundaryData& density, const std::vector<Vec3>& targets,
                                const KernelContext& ctx, const PmlProfile* profile) {
  check_density(density);
  const auto& q = *density.quad;
  check_targets(q, targets);
  std::vector<CVec4> out(targets.size(), CVec4::Zero());
  parallel_for(targets.size(), [&](std::size_t t) {
    CVec4 acc = CVec4::Zero();
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (density.values[i].isZero(0.0)) continue;
      const CMat4 phi = profile ? eval_phi_stretched(targets[t], q.nodes[i], *profile, ctx)
                                : eval_phi(targets[t] - q.nodes[i], ctx);
      acc += q.weights[i] * (phi * density.values[i]);
    }
    out[t] = acc;
  });
  return out;
}

std::vector<CVec4> double_layer(const BoundaryData& density, const std::vector<Vec3>& targets,
                                const KernelContext& ctx, const PmlProfile* profile) {
  check_density(density);
  const auto& q = *density.quad;
  check_targets(q, targets);
  std::vector<CVec4> out(targets.size(), CVec4::Zero());
  parallel_for(targets.size(), [&](std::size_t t) {
    CVec4 acc = CVec4::Zero();
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (density.values[i].isZero(0.0)) continue;
      const CMat4 D = apply_stress_operator(targets[t], q.nodes[i], q.exterior_normal(i), ctx, profile);
      acc += q.weights[i] * (D * density.values[i]);
    }
    out[t] = acc;
  });
  return out;
}

PointSource::PointSource(const Vec3& y0, int k, const Axes& obstacle, KernelContext ctx)
    : y0_(y0), k_(k), ctx_(std::move(ctx)) {
  if (k < 0 || k > 3) throw InvalidParameter("source column must be in 0..3");
  const double size = 2.0 * std::min({obstacle[0], obstacle[1], obstacle[2]});
  for (int j = 0; j < 3; ++j)
    if (obstacle[j] - std::abs(y0[j]) < 0.1 * size)
      throw InvalidSource("point source must lie inside the obstacle, away from its faces");
}

BoundaryData PointSource::trace(std::shared_ptr<const SurfaceQuadrature> quad) const {
  std::vector<CVec4> v(quad->size());
  parallel_for(v.size(), [&](std::size_t i) { v[i] = value(quad->nodes[i]); });
  return BoundaryData(std::move(quad), std::move(v));
}

BoundaryData PointSource::traction(std::shared_ptr<const SurfaceQuadrature> quad) const {
  std::vector<CVec4> v(quad->size());
  parallel_for(v.size(), [&](std::size_t i) {
    const ColumnField f = eval(quad->nodes[i]);
    v[i] = apply_R(f.value, f.grad, quad->exterior_normal(i), ctx_.params);
  });
  return BoundaryData(std::move(quad), std::move(v));
}

std::vector<CVec4> pml_extension(const BoundaryData& f, const BoundaryData& Nf,
                                 const std::vector<Vec3>& targets, const PmlProfile& profile,
                                 const KernelContext& ctx) {
  if (f.quad != Nf.quad) throw InvalidParameter("f and N f must share one quadrature");
  const auto sl = single_layer(Nf, targets, ctx, &profile);
  const auto dl = double_layer(f, targets, ctx, &profile);
  std::vector<CVec4> out(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) out[t] = 0.5 * (sl[t] - dl[t]);
  return out;
}

SurfaceSamples sample_pml_extension(const BoundaryData& f, const BoundaryData& Nf,
                                    const Axes& hw, int n, const PmlProfile& profile,
                                    const KernelContext& ctx, double fd_step) {
  static constexpr double w1[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
  static constexpr double o1[4] = {-2.0, -1.0, 1.0, 2.0};
  SurfaceSamples s;
  std::vector<Vec3> all;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const GaussRule rb = gauss_legendre(n, -hw[b], hw[b]), rc = gauss_legendre(n, -hw[c], hw[c]);
    for (int side = 0; side < 2; ++side)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Vec3 x;
          x[a] = (side ? 1.0 : -1.0) * hw[a];
          x[b] = rb.nodes[i];
          x[c] = rc.nodes[j];
          s.points.push_back(x);
          s.face.push_back(2 * a + side);
          all.push_back(x);
          for (int t : {b, c})
            for (double o : o1) {
              Vec3 y = x;
              y[t] += o * fd_step;
              all.push_back(y);
            }
        }
  }
  const auto vals = pml_extension(f, Nf, all, profile, ctx);
  const std::size_t stride = 9;
  for (std::size_t p = 0; p < s.points.size(); ++p) {
    const int a = s.face[p] / 2, b = (a + 1) % 3, c = (a + 2) % 3;
    s.values.push_back(vals[p * stride]);
    CGrad4 g = CGrad4::Zero();
    for (int t = 0; t < 2; ++t) {
      CVec4 d = CVec4::Zero();
      for (int k = 0; k < 4; ++k) d += w1[k] * vals[p * stride + 1 + 4 * t + k];
      g.col(t == 0 ? b : c) = d / fd_step;
    }
    s.gradients.push_back(g);
  }
  return s;
}

double boundary_norm_surrogate(const std::vector<CVec4>& values,
                               const std::vector<CGrad4>& gradients, double d) {
  double vmax = 0.0, gmax = 0.0;
  for (const auto& v : values) vmax = std::max(vmax, v.norm());
  for (const auto& g : gradients) gmax = std::max(gmax, g.norm());
  return d * vmax + std::pow(d, 1.5) * gmax;
}

}  // namespace tepml
