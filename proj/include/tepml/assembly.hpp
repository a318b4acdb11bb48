#pragma once

/**
 * @file assembly.hpp
 * @brief Trilinear finite-element assembly of the stretched thermoelastic
 * sesquilinear form
 *
 *   B(U, V) = int sigma~(u) A : grad v* - rho omega^2 J u . v* - gamma p div(A v*)
 *             + grad q* . K grad p - q J p q* - i omega eta q* div(A u)
 *
 * with U = (u, p), V = (v, q), sigma~(u) = 2 mu eps~(u) + lambda tr(eps~(u)) I,
 * eps~(u) = (grad u B + B grad u^T) / 2 and the diagonal PML matrices J, A, K,
 * B of pml_geometry. Matrix entry (row, column) = B(trial column, test row).
 */

#include <functional>
#include <memory>

#include <Eigen/SparseCore>

#include "tepml/material.hpp"
#include "tepml/mesh.hpp"
#include "tepml/pml_geometry.hpp"

namespace tepml {

using SparseMatrixC = Eigen::SparseMatrix<cplx, Eigen::ColMajor, int>;
using VectorC = Eigen::VectorXcd;

/// Which terms of the form to assemble.
enum class FormPart {
  kFull,       ///< the complete form B
  kPrincipal,  ///< sigma~(u) A : grad v* + grad q* . K grad p only
};

/// Volume source Q(x) with L U = Q; it enters the load as -int Q . V*.
using VolumeSource = std::function<CVec4(const Vec3&)>;

struct AssembledSystem {
  std::shared_ptr<const HexMesh> mesh;
  SparseMatrixC matrix;  ///< all nodal unknowns, 4 per node (u0, u1, u2, p)
  VectorC load;
  /// t with t^2 = i omega eta / gamma: scaling thermal rows by 1/t and thermal
  /// columns by t makes the matrix complex symmetric. Zero when the coupling
  /// is one-sided (gamma or eta vanishes).
  cplx thermal_scale = 0.0;
};

SparseMatrixC assemble_form(const HexMesh& mesh, const MaterialParams& params,
                            const PmlProfile& profile, FormPart part = FormPart::kFull);

/// Block-diagonal scalar Laplace stiffness (same block for all 4 components).
SparseMatrixC assemble_component_stiffness(const HexMesh& mesh);

/// Block-diagonal scalar mass matrix.
SparseMatrixC assemble_component_mass(const HexMesh& mesh);

AssembledSystem assemble_B(std::shared_ptr<const HexMesh> mesh, const MaterialParams& params,
                           const PmlProfile& profile, const VolumeSource& source = {});

/// Direct quadrature of the form for two nodal fields (independent of the
/// element-matrix code path).
cplx evaluate_form(const HexMesh& mesh, const MaterialParams& params, const PmlProfile& profile,
                   const VectorC& trial, const VectorC& test, FormPart part = FormPart::kFull);

struct FieldNorms {
  double grad_u2 = 0.0;  ///< ||grad u||^2
  double grad_p2 = 0.0;  ///< ||grad p||^2
  double u2 = 0.0;       ///< ||u||^2
  double p2 = 0.0;       ///< ||p||^2
  double h1_squared() const { return grad_u2 + grad_p2 + u2 + p2; }
};

/// Squared norms of a nodal field over the mesh (2^3 Gauss points per cell).
FieldNorms field_norms(const HexMesh& mesh, const VectorC& field);

}  // namespace tepml
