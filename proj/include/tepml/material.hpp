#pragma once

/**
 * @file material.hpp
 * @brief Thermoelastic medium constants, characteristic wavenumbers and the
 * PML admissibility conditions.
 */

#include <string>
#include <vector>

#include "tepml/types.hpp"

namespace tepml {

/// Constants of a homogeneous thermoelastic medium at a fixed frequency.
struct MaterialParams {
  double rho = 1.0;
  double lame_lambda = 1.0;
  double lame_mu = 1.0;
  double gamma = 0.1;  ///< stress-temperature coupling
  double eta = 0.1;    ///< heat-dilatation coupling
  double kappa = 1.0;  ///< thermal diffusivity
  cplx omega{1.0, 0.0};

  /// Throws InvalidParameter unless mu > 0, 3 lambda + 2 mu > 0, kappa > 0,
  /// rho > 0, gamma > 0 and eta > 0.
  void validate() const;

  /// Same as validate() but admits gamma = eta = 0 (decoupled medium).
  void validate_allow_decoupled() const;

  double p_modulus() const { return lame_lambda + 2.0 * lame_mu; }

  /// q = i omega / kappa.
  cplx q() const { return I * omega / kappa; }

  /// kp^2 = rho omega^2 / (lambda + 2 mu).
  cplx kp2() const { return rho * omega * omega / p_modulus(); }
};

struct CouplingConstants {
  double gamma;
  double eta;
};

/// gamma = (3 lambda + 2 mu) alpha_T, eta = T0 gamma / lambda0.
CouplingConstants derive_coupling(double alpha_T, double T0, double lambda0, double lame_lambda,
                                  double lame_mu);

/// Wavenumbers of the coupled compressional/thermal modes and the shear mode.
struct WaveNumbers {
  cplx kp;
  cplx q;
  cplx l1;  ///< root with the smaller |l^2|
  cplx l2;
  cplx l3;  ///< shear wavenumber omega sqrt(rho/mu)
  double cap_lambda;  ///< min(Re l1, Re l2, Re l3)
};

/// Square root with Re >= 0, and Im > 0 when the real part vanishes.
cplx principal_sqrt(cplx z);

/// Solves t^2 - S t + P = 0 for t = l^2 and takes principal square roots.
/// Throws DegenerateRoots for a (numerically) double root and RootSelection
/// when a root has nonpositive real part.
WaveNumbers characteristic_roots(const MaterialParams& params);

/// Same as characteristic_roots but skips the parameter validation, so that
/// gamma = eta = 0 (the decoupled medium) can be evaluated.
WaveNumbers characteristic_roots_unchecked(const MaterialParams& params);

struct ConstraintEntry {
  std::string name;
  std::string statement;
  bool pass;
  double slack;  ///< lhs - rhs of the inequality; positive means satisfied
};

struct ConstraintReport {
  std::vector<ConstraintEntry> entries;
  bool all_pass() const;
  std::string summary() const;
};

/// Evaluates the five sufficient conditions for coercivity of the truncated
/// PML problem at omega = (gamma/eta) i.
ConstraintReport check_pml_constraints(const MaterialParams& params, double zeta, double alpha0);

/// Smallest zeta passing the three zeta conditions.
double minimal_admissible_zeta(const MaterialParams& params);

/// Upper (strict) bound on alpha0 from the constraint set.
double alpha0_upper_bound(const MaterialParams& params);

}  // namespace tepml
