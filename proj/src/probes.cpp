#include "tepml/probes.hpp"

#include <array>
#include <cmath>

#include "tepml/errors.hpp"

namespace tepml {

cplx special_frequency(const MaterialParams& p) { return I * (p.gamma / p.eta); }

CoercivityProbe::CoercivityProbe(const HexMesh& mesh, const MaterialParams& params,
                                 const PmlProfile& profile, bool check_constraints)
    : mesh_(mesh) {
  if (check_constraints) {
    if (std::abs(params.omega - special_frequency(params)) > 1e-12 * std::abs(params.omega))
      throw PreconditionFailed("coercivity probe needs omega = (gamma/eta) i");
    const ConstraintReport rep = check_pml_constraints(params, profile.zeta(), profile.alpha0());
    if (!rep.all_pass()) throw PreconditionFailed("PML constraint set violated:\n" + rep.summary());
  }
  principal_ = assemble_form(mesh, params, profile, FormPart::kPrincipal);
  full_ = assemble_form(mesh, params, profile, FormPart::kFull);
  stiffness_ = assemble_component_stiffness(mesh);
  mass_ = assemble_component_mass(mesh);
}

double CoercivityProbe::ellipticity_ratio(const VectorC& f) const {
  const double g = f.dot(stiffness_ * f).real();
  if (!(g > 0.0)) throw InvalidParameter("ellipticity ratio undefined for a zero field");
  return f.dot(principal_ * f).real() / g;
}

double CoercivityProbe::coercivity_ratio(const VectorC& f) const {
  const double h1 = f.dot(stiffness_ * f).real() + f.dot(mass_ * f).real();
  if (!(h1 > 0.0)) throw InvalidParameter("coercivity ratio undefined for a zero field");
  return f.dot(full_ * f).real() / h1;
}

std::pair<double, double> CoercivityProbe::ratios(const VectorC& f) const {
  const double g = f.dot(stiffness_ * f).real();
  const double h1 = g + f.dot(mass_ * f).real();
  if (!(g > 0.0)) throw InvalidParameter("probe ratios undefined for a zero field");
  return {f.dot(principal_ * f).real() / g, f.dot(full_ * f).real() / h1};
}

double assemble_A_real_part_probe(const HexMesh& mesh, const MaterialParams& params,
                                  const PmlProfile& profile, const VectorC& field) {
  const FieldNorms n = field_norms(mesh, field);
  const double g = n.grad_u2 + n.grad_p2;
  if (!(g > 0.0)) throw InvalidParameter("ellipticity ratio undefined for a zero field");
  return evaluate_form(mesh, params, profile, field, field, FormPart::kPrincipal).real() / g;
}

double coercivity_probe_special_frequency(const HexMesh& mesh, const MaterialParams& params,
                                          const PmlProfile& profile, const VectorC& field) {
  if (std::abs(params.omega - special_frequency(params)) > 1e-12 * std::abs(params.omega))
    throw PreconditionFailed("coercivity probe needs omega = (gamma/eta) i");
  const ConstraintReport rep = check_pml_constraints(params, profile.zeta(), profile.alpha0());
  if (!rep.all_pass()) throw PreconditionFailed("PML constraint set violated:\n" + rep.summary());
  const FieldNorms n = field_norms(mesh, field);
  const double h1 = n.h1_squared();
  if (!(h1 > 0.0)) throw InvalidParameter("coercivity ratio undefined for a zero field");
  return evaluate_form(mesh, params, profile, field, field, FormPart::kFull).real() / h1;
}

VectorC random_boundary_free_field(const HexMesh& mesh, std::mt19937_64& rng, bool smooth) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::uint8_t boundary = kTagObstacle | kTagOuter |
                                (mesh.domain == MeshDomain::kPmlLayer ? std::uint8_t(kTagInterface) : std::uint8_t(0));
  VectorC f = VectorC::Zero(Eigen::Index(mesh.num_dofs()));
  if (!smooth) {
    for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
      if (mesh.tags[n] & boundary) continue;
      for (int c = 0; c < 4; ++c) f[Eigen::Index(4 * n + c)] = cplx(u(rng), u(rng));
    }
    return f;
  }
  constexpr int kModes = 4;
  std::array<std::array<double, 3>, kModes> k{};
  std::array<std::array<double, 3>, kModes> ph{};
  std::array<CVec4, kModes> amp;
  std::uniform_int_distribution<int> wave(1, 3);
  for (int m = 0; m < kModes; ++m) {
    for (int j = 0; j < 3; ++j) {
      k[m][j] = wave(rng) * kPi / (2.0 * mesh.outer[j]);
      ph[m][j] = kPi * u(rng);
    }
    for (int c = 0; c < 4; ++c) amp[m][c] = cplx(u(rng), u(rng));
  }
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
    if (mesh.tags[n] & boundary) continue;
    const Vec3& x = mesh.nodes[n];
    CVec4 v = CVec4::Zero();
    for (int m = 0; m < kModes; ++m) {
      double s = 1.0;
      for (int j = 0; j < 3; ++j) s *= std::cos(k[m][j] * x[j] + ph[m][j]);
      v += s * amp[m];
    }
    f.segment<4>(4 * Eigen::Index(n)) = v;
  }
  return f;
}

}  // namespace tepml
