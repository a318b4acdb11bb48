#include <random>

#include <gtest/gtest.h>

#include "../support/reference_form.hpp"
#include "tepml/assembly.hpp"
#include "tepml/errors.hpp"

namespace tepml {
namespace {

MaterialParams medium() {
  MaterialParams p;
  p.eta = 0.05;
  p.omega = 1.3;
  return p;
}

HexMesh small_mesh(const PmlProfile& prof, Symmetry sym = Symmetry::kNone) {
  MeshOptions o;
  o.h_target = 0.5;
  o.symmetry = sym;
  return build_mesh(prof, {0.4, 0.4, 0.4}, o);
}

PmlProfile layer(double alpha0) {
  return PmlProfile::with_ramp_fraction({1, 1, 1}, {1, 1, 1}, alpha0, 2.5);
}

VectorC random_field(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorC v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(g(rng), g(rng));
  return v;
}

double max_abs(const SparseMatrixC& A) {
  double m = 0.0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(A, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

TEST(Assembly, MatrixAgreesWithDirectQuadratureOfTheForm) {
  const PmlProfile prof = layer(1.2);
  const HexMesh mesh = small_mesh(prof);
  for (FormPart part : {FormPart::kFull, FormPart::kPrincipal}) {
    const SparseMatrixC K = assemble_form(mesh, medium(), prof, part);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
      const VectorC U = random_field(mesh.num_dofs(), rng), V = random_field(mesh.num_dofs(), rng);
      const cplx a = V.dot(K * U);
      const cplx b = evaluate_form(mesh, medium(), prof, U, V, part);
      EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(b));
    }
  }
}

TEST(Assembly, WithoutAbsorptionEqualsTheStandardThermoelasticSystem) {
  const PmlProfile prof = layer(0.0);
  const HexMesh mesh = small_mesh(prof);
  const SparseMatrixC K = assemble_form(mesh, medium(), prof);
  const SparseMatrixC R = testing::reference_thermoelastic_matrix(mesh, medium());
  EXPECT_LE(max_abs(K - R), 1e-12 * max_abs(R));
}

TEST(Assembly, DecoupledMediumGivesBlockDiagonalSystem) {
  MaterialParams p = medium();
  p.gamma = p.eta = 0.0;
  const PmlProfile prof = layer(1.0);
  const SparseMatrixC K = assemble_form(small_mesh(prof), p, prof);
  std::size_t coupling = 0;
  for (int k = 0; k < K.outerSize(); ++k)
    for (SparseMatrixC::InnerIterator it(K, k); it; ++it)
      if ((it.row() % 4 == 3) != (it.col() % 4 == 3) && it.value() != 0.0) ++coupling;
  EXPECT_EQ(coupling, 0u);
}

TEST(Assembly, ThermalScalingMakesTheSystemComplexSymmetric) {
  const PmlProfile prof = layer(1.0);
  auto mesh = std::make_shared<const HexMesh>(small_mesh(prof));
  const AssembledSystem sys = assemble_B(mesh, medium(), prof);
  const cplx t = sys.thermal_scale;
  EXPECT_NEAR(std::abs(t * t - I * medium().omega * medium().eta / medium().gamma), 0.0, 1e-14);
  const Eigen::Index n = sys.matrix.rows();
  VectorC dr(n), dc(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    dc[i] = i % 4 == 3 ? t : cplx(1.0);
    dr[i] = 1.0 / dc[i];
  }
  const SparseMatrixC S = dr.asDiagonal() * sys.matrix * dc.asDiagonal();
  const SparseMatrixC St = S.transpose();
  EXPECT_LE(max_abs(S - St), 1e-13 * max_abs(S));
  // the unscaled matrix is not symmetric
  const SparseMatrixC Kt = sys.matrix.transpose();
  EXPECT_GT(max_abs(sys.matrix - Kt), 1e-3 * max_abs(sys.matrix));
}

TEST(Assembly, VolumeSourceEntersTheLoad) {
  const PmlProfile prof = layer(1.0);
  auto mesh = std::make_shared<const HexMesh>(small_mesh(prof));
  const AssembledSystem none = assemble_B(mesh, medium(), prof);
  EXPECT_EQ(none.load.norm(), 0.0);
  const AssembledSystem one =
      assemble_B(mesh, medium(), prof, [](const Vec3&) { return CVec4(0.0, 0.0, 0.0, 1.0); });
  // -int Q . conj(V) summed over all test functions of the thermal component
  cplx total = 0.0;
  for (Eigen::Index i = 3; i < one.load.size(); i += 4) total += one.load[i];
  double volume = 0.0;
  for (std::size_t c = 0; c < mesh->num_cells(); ++c) volume += (mesh->cell_upper(c) - mesh->cell_lower(c)).prod();
  EXPECT_NEAR(std::abs(total + volume), 0.0, 1e-12 * volume);
}

TEST(Assembly, ComponentMatricesAreConsistentWithFieldNorms) {
  const PmlProfile prof = layer(1.0);
  const HexMesh mesh = small_mesh(prof);
  const SparseMatrixC A = assemble_component_stiffness(mesh), M = assemble_component_mass(mesh);
  std::mt19937_64 rng(9);
  const VectorC f = random_field(mesh.num_dofs(), rng);
  const FieldNorms n = field_norms(mesh, f);
  EXPECT_NEAR(f.dot(A * f).real(), n.grad_u2 + n.grad_p2, 1e-11 * (n.grad_u2 + n.grad_p2));
  EXPECT_NEAR(f.dot(M * f).real(), n.u2 + n.p2, 1e-11 * (n.u2 + n.p2));
}

TEST(Assembly, RejectsMismatchedFields) {
  const PmlProfile prof = layer(1.0);
  const HexMesh mesh = small_mesh(prof);
  EXPECT_THROW(evaluate_form(mesh, medium(), prof, VectorC::Zero(4), VectorC::Zero(4)), InvalidParameter);
}

}  // namespace
}  // namespace tepml
