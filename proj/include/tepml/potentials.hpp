#pragma once

/**
 * @file potentials.hpp
 * @brief Layer potentials on the surface of a centered box, point-source
 * reference fields and the PML extension of boundary data.
 *
 * Orientation: densities are paired with the unit normal pointing into the
 * box, i.e. the outward normal of the exterior domain. With that normal the
 * exterior representation reads U = 1/2 [Psi_SL(R U) - Psi_DL(U)].
 * SurfaceQuadrature::normals stores the outward normals of the box itself;
 * use exterior_normal() for the opposite orientation.
 */

#include <memory>
#include <vector>

#include "tepml/fundsol.hpp"
#include "tepml/pml_geometry.hpp"
#include "tepml/types.hpp"

namespace tepml {

struct SurfaceQuadrature {
  Axes half_widths{};
  int n_per_edge = 0;
  int panels_per_edge = 0;
  int points_per_panel = 0;  ///< Gauss points per panel edge
  double panel_diameter = 0.0;
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  std::vector<Vec3> normals;  ///< outward normals of the box
  std::vector<int> face;      ///< 2 * axis + (1 for the + side)

  std::size_t size() const { return nodes.size(); }
  Vec3 exterior_normal(std::size_t i) const { return -normals[i]; }
  double area() const;
};

/// Tensor Gauss rule with n_per_edge points per face direction, split into
/// panels of at most 4 points per edge. Throws InvalidGeometry for a
/// degenerate box and InvalidParameter for n_per_edge < 2.
SurfaceQuadrature build_surface_quadrature(const Axes& half_widths, int n_per_edge);

struct BoundaryData {
  std::shared_ptr<const SurfaceQuadrature> quad;
  std::vector<CVec4> values;

  BoundaryData() = default;
  BoundaryData(std::shared_ptr<const SurfaceQuadrature> q, std::vector<CVec4> v);
  static BoundaryData zeros(std::shared_ptr<const SurfaceQuadrature> q);
};

/// Distance from x to the surface of the centered box.
double distance_to_box_surface(const Axes& half_widths, const Vec3& x);

/// Psi_SL(p)(x) = sum_q w_q Phi(x, y_q) p(y_q), stretched when profile != nullptr.
std::vector<CVec4> single_layer(const BoundaryData& density, const std::vector<Vec3>& targets,
                                const KernelContext& ctx, const PmlProfile* profile = nullptr);

/// Psi_DL(f)(x) = sum_q w_q D(x, y_q; nu_q) f(y_q) with nu the exterior normal.
std::vector<CVec4> double_layer(const BoundaryData& density, const std::vector<Vec3>& targets,
                                const KernelContext& ctx, const PmlProfile* profile = nullptr);

/// Radiating field x -> Phi(x - y0) e_k of a source inside a box obstacle.
class PointSource {
 public:
  /// Throws InvalidSource unless y0 lies inside the obstacle with a margin of
  /// at least 0.1 times the smallest obstacle width.
  PointSource(const Vec3& y0, int k, const Axes& obstacle_half_widths, KernelContext ctx);

  ColumnField eval(const Vec3& x) const { return phi_column(x, y0_, k_, ctx_); }
  CVec4 value(const Vec3& x) const { return eval(x).value; }

  /// Dirichlet trace on the quadrature nodes.
  BoundaryData trace(std::shared_ptr<const SurfaceQuadrature> quad) const;

  /// R U on the quadrature nodes with the exterior normal (the exact DtN data).
  BoundaryData traction(std::shared_ptr<const SurfaceQuadrature> quad) const;

  const Vec3& y0() const { return y0_; }
  int column() const { return k_; }
  const KernelContext& context() const { return ctx_; }

 private:
  Vec3 y0_;
  int k_;
  KernelContext ctx_;
};

/// Stretched representation 1/2 [Psi_SL(Nf) - Psi_DL(f)] at the targets.
std::vector<CVec4> pml_extension(const BoundaryData& f, const BoundaryData& Nf,
                                 const std::vector<Vec3>& targets, const PmlProfile& profile,
                                 const KernelContext& ctx);

/// Field samples on a box surface: per-face n x n Gauss nodes, values and
/// tangential gradients (the normal column of each gradient is zero).
struct SurfaceSamples {
  std::vector<Vec3> points;
  std::vector<int> face;
  std::vector<CVec4> values;
  std::vector<CGrad4> gradients;
};

/// Samples the PML extension on the surface of the box `half_widths`.
/// Tangential gradients use fourth-order central differences of step fd_step.
SurfaceSamples sample_pml_extension(const BoundaryData& f, const BoundaryData& Nf,
                                    const Axes& half_widths, int n, const PmlProfile& profile,
                                    const KernelContext& ctx, double fd_step);

/// d max|v| + d^{3/2} max|grad v| over the samples (Euclidean norm of the
/// 4-vector, Frobenius norm of the gradient).
double boundary_norm_surrogate(const std::vector<CVec4>& values,
                               const std::vector<CGrad4>& gradients, double d);

}  // namespace tepml
