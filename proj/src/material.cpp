#include "tepml/material.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tepml/errors.hpp"

namespace tepml {

namespace {

void validate_common(const MaterialParams& p) {
  if (!(p.rho > 0.0)) throw InvalidParameter("rho must be positive");
  if (!(p.lame_mu > 0.0)) throw InvalidParameter("mu must be positive");
  if (!(3.0 * p.lame_lambda + 2.0 * p.lame_mu > 0.0))
    throw InvalidParameter("3*lambda + 2*mu must be positive");
  if (!(p.kappa > 0.0)) throw InvalidParameter("kappa must be positive");
  if (!std::isfinite(p.omega.real()) || !std::isfinite(p.omega.imag()) || p.omega == 0.0)
    throw InvalidParameter("omega must be finite and nonzero");
}

}  // namespace

void MaterialParams::validate() const {
  validate_common(*this);
  if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
  if (!(eta > 0.0)) throw InvalidParameter("eta must be positive");
}

void MaterialParams::validate_allow_decoupled() const {
  validate_common(*this);
  if (!(gamma >= 0.0)) throw InvalidParameter("gamma must be nonnegative");
  if (!(eta >= 0.0)) throw InvalidParameter("eta must be nonnegative");
}

CouplingConstants derive_coupling(double alpha_T, double T0, double lambda0, double lame_lambda,
                                  double lame_mu) {
  if (!(lambda0 > 0.0)) throw InvalidParameter("thermal conductivity must be positive");
  if (!(T0 > 0.0)) throw InvalidParameter("reference temperature must be positive");
  const double gamma = (3.0 * lame_lambda + 2.0 * lame_mu) * alpha_T;
  return {gamma, T0 * gamma / lambda0};
}

cplx principal_sqrt(cplx z) {
  cplx r = std::sqrt(z);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

WaveNumbers characteristic_roots_unchecked(const MaterialParams& p) {
  const cplx kp2 = p.kp2();
  const cplx q = p.q();
  const cplx S = q + I * p.omega * p.gamma * p.eta / p.p_modulus() + kp2;
  const cplx P = q * kp2;

  // Larger-magnitude root from the cancellation-free branch, the other by Vieta.
  const cplx disc = std::sqrt(S * S - 4.0 * P);
  const cplx ta = 0.5 * (S + disc);
  const cplx tb = 0.5 * (S - disc);
  const cplx big = std::abs(ta) >= std::abs(tb) ? ta : tb;
  if (big == 0.0) throw DegenerateRoots("characteristic quadratic has a double root at zero");
  cplx t1 = P / big;
  cplx t2 = big;
  if (std::abs(t1) > std::abs(t2)) std::swap(t1, t2);

  const double scale = std::max(std::abs(t1), std::abs(t2));
  if (std::abs(t1 - t2) < 1e-10 * scale)
    throw DegenerateRoots("characteristic quadratic has a double root (l1^2 == l2^2)");

  WaveNumbers w;
  w.kp = principal_sqrt(kp2);
  w.q = q;
  w.l1 = principal_sqrt(t1);
  w.l2 = principal_sqrt(t2);
  w.l3 = p.omega * std::sqrt(p.rho / p.lame_mu);
  if (!(w.l1.real() > 0.0) || !(w.l2.real() > 0.0)) {
    std::ostringstream os;
    os << "characteristic root with nonpositive real part: l1 = " << w.l1 << ", l2 = " << w.l2;
    throw RootSelection(os.str());
  }
  w.cap_lambda = std::min({w.l1.real(), w.l2.real(), w.l3.real()});
  return w;
}

WaveNumbers characteristic_roots(const MaterialParams& params) {
  params.validate();
  return characteristic_roots_unchecked(params);
}

bool ConstraintReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ConstraintEntry& e) { return e.pass; });
}

std::string ConstraintReport::summary() const {
  std::ostringstream os;
  for (const auto& e : entries)
    os << (e.pass ? "pass " : "FAIL ") << e.name << " (" << e.statement << "), slack " << e.slack
       << "\n";
  return os.str();
}

double alpha0_upper_bound(const MaterialParams& p) {
  return (p.lame_lambda + p.lame_mu) / (2.0 * p.gamma * p.p_modulus());
}

double minimal_admissible_zeta(const MaterialParams& p) {
  return std::max({std::sqrt(p.p_modulus() / p.lame_mu), std::sqrt(3.0),
                   p.gamma + std::sqrt(p.gamma * p.gamma + 1.0)});
}

ConstraintReport check_pml_constraints(const MaterialParams& p, double zeta, double alpha0) {
  ConstraintReport r;
  auto add = [&r](std::string name, std::string statement, double slack, bool strict) {
    r.entries.push_back({std::move(name), std::move(statement), strict ? slack > 0.0 : slack >= 0.0,
                         slack});
  };
  add("zeta_vs_wave_speeds", "zeta >= sqrt((lambda+2mu)/mu)",
      zeta - std::sqrt(p.p_modulus() / p.lame_mu), false);
  add("coupling_ratio", "rho gamma^2 / eta^2 >= 1", p.rho * p.gamma * p.gamma / (p.eta * p.eta) - 1.0,
      false);
  add("zeta_vs_gamma", "zeta^2 - 1 >= 2 gamma zeta", zeta * zeta - 1.0 - 2.0 * p.gamma * zeta, false);
  add("zeta_min", "zeta >= sqrt(3)", zeta - std::sqrt(3.0), false);
  add("alpha0_max", "alpha0 < (lambda+mu)/(2 gamma (lambda+2mu))", alpha0_upper_bound(p) - alpha0,
      true);
  return r;
}

}  // namespace tepml
