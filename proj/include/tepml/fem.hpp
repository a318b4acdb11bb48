#pragma once

/**
 * @file fem.hpp
 * @brief Dirichlet problems on hexahedral meshes, the discrete PML
 * approximation of the DtN map and H1 error measurement.
 */

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "tepml/assembly.hpp"
#include "tepml/fundsol.hpp"
#include "tepml/mesh.hpp"
#include "tepml/sparse_solver.hpp"

namespace tepml {

struct DiscreteField {
  std::shared_ptr<const HexMesh> mesh;
  VectorC values;  ///< 4 entries per node

  CVec4 at_node(std::size_t n) const { return values.segment<4>(4 * Eigen::Index(n)); }
};

using PointFunction = std::function<CVec4(const Vec3&)>;
using PointFieldFunction = std::function<ColumnField(const Vec3&)>;

/// True when component c of a column-k point-source field is odd under
/// x_axis -> -x_axis (and therefore vanishes on the plane x_axis = 0).
bool component_is_odd(int component, int source_column, int axis);

struct DirichletSet {
  std::vector<char> fixed;  ///< per unknown
  VectorC values;           ///< prescribed values (zero where not fixed)

  std::size_t num_fixed() const;
};

/// Fixes every component on nodes carrying any tag in `boundary_tags`, with
/// values g(x) (zero when g is empty). On octant meshes the components that
/// are odd for `source_column` are fixed to zero on the symmetry planes.
DirichletSet make_dirichlet(const HexMesh& mesh, std::uint8_t boundary_tags, const PointFunction& g,
                            int source_column);

enum class SolverKind {
  kAuto,       ///< symmetric factorization when the scaled system is symmetric, LU otherwise or on breakdown
  kLU,         ///< always UMFPACK LU
  kSymmetric,  ///< symmetric factorization only
};

struct SolveOptions {
  SolverKind solver = SolverKind::kAuto;
  FillOrdering ordering = FillOrdering::kMetis;
  double rcond_threshold = 1e-14;
  double residual_tolerance = 1e-10;
};

struct SolveResult {
  DiscreteField field;
  std::size_t n_unknowns = 0;
  double residual = 0.0;  ///< ||A x - b|| / ||b|| on the free unknowns
  double rcond = 0.0;
  double factor_seconds = 0.0;
  bool symmetric_factor = false;  ///< true when the symmetric factorization was used
};

/// Eliminates the fixed unknowns (lifting) and solves for the rest. Throws
/// SolverBreakdown for singular systems or when the residual exceeds the
/// tolerance.
SolveResult solve(const AssembledSystem& system, const DirichletSet& dirichlet,
                  const SolveOptions& options = {});

/// Nodal interpolant of a function.
VectorC interpolate(const HexMesh& mesh, const PointFunction& f);

/// Value and gradient of a nodal field at a point of a given cell.
ColumnField evaluate_in_cell(const HexMesh& mesh, const VectorC& field, std::size_t cell, const Vec3& x);

struct H1Error {
  double error = 0.0;       ///< ||U_h - U||_{H1(Omega1)}
  double exact_norm = 0.0;  ///< ||U||_{H1(Omega1)}
  double relative() const { return exact_norm > 0.0 ? error / exact_norm : error; }
};

/// H1 error over the mesh cells inside B1 with 3^3 Gauss points per cell,
/// scaled to the full domain on octant meshes.
H1Error h1_error(const DiscreteField& field, const PointFieldFunction& exact);

enum class FluxRecovery {
  kRecoveredGradient,  ///< average of one-sided cell gradients at the node
  kVariational,        ///< residual functional B(U_h, psi_i) over the lumped boundary mass
};

struct DtnResult {
  std::vector<int> nodes;       ///< face-interior nodes of the B1 surface
  std::vector<Vec3> normals;    ///< unit normals pointing into B1
  std::vector<double> weights;  ///< lumped surface mass of each node
  std::vector<CVec4> values;    ///< approximate R U at the nodes
  SolveResult solve;
};

/// Solves the layer problem (data G on the B1 surface, zero on the outer
/// boundary) on a kPmlLayer mesh and evaluates R on the B1 surface.
/// `source_column` selects the reflection parity on octant meshes (ignored
/// otherwise).
DtnResult apply_discrete_dtn_hat(std::shared_ptr<const HexMesh> layer_mesh, const PointFunction& G,
                                 const MaterialParams& params, const PmlProfile& profile,
                                 FluxRecovery recovery = FluxRecovery::kRecoveredGradient,
                                 int source_column = 0, const SolveOptions& options = {});

}  // namespace tepml
