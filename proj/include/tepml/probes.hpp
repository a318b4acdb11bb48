#pragma once

/**
 * @file probes.hpp
 * @brief Discrete ellipticity and coercivity ratios of the PML form on
 * fields vanishing on the mesh boundary.
 */

#include <cstdint>
#include <random>
#include <utility>

#include "tepml/assembly.hpp"

namespace tepml {

/// Re A(Phi, Phi) / (||grad u||^2 + ||grad p||^2) with A the principal part
/// of the form. Throws InvalidParameter for a zero field.
double assemble_A_real_part_probe(const HexMesh& mesh, const MaterialParams& params,
                                  const PmlProfile& profile, const VectorC& field);

/// omega = (gamma/eta) i, the frequency at which the constraint set gives coercivity.
cplx special_frequency(const MaterialParams& params);

/// Re B(Phi, Phi) / ||Phi||_{H1}^2. Requires params.omega == (gamma/eta) i and
/// a passing constraint report, otherwise throws PreconditionFailed.
double coercivity_probe_special_frequency(const HexMesh& mesh, const MaterialParams& params,
                                          const PmlProfile& profile, const VectorC& field);

/// Assembles the forms once and evaluates both ratios for many fields.
class CoercivityProbe {
 public:
  /// check_constraints = false skips the constraint precondition (negative controls).
  CoercivityProbe(const HexMesh& mesh, const MaterialParams& params, const PmlProfile& profile,
                  bool check_constraints = true);

  /// Re A(Phi, Phi) / (||grad u||^2 + ||grad p||^2).
  double ellipticity_ratio(const VectorC& field) const;
  /// Re B(Phi, Phi) / ||Phi||_{H1}^2 at the operator's frequency.
  double coercivity_ratio(const VectorC& field) const;
  /// Both ratios (ellipticity, coercivity) with shared products.
  std::pair<double, double> ratios(const VectorC& field) const;

 private:
  const HexMesh& mesh_;
  // row-major copies for faster products
  Eigen::SparseMatrix<cplx, Eigen::RowMajor, int> principal_, full_, stiffness_, mass_;
};

/// Random field vanishing on every boundary-tagged node (obstacle, outer and,
/// for layer meshes, interface): half of the draws are nodal noise, half a
/// sum of a few smooth modes.
VectorC random_boundary_free_field(const HexMesh& mesh, std::mt19937_64& rng, bool smooth);

}  // namespace tepml
