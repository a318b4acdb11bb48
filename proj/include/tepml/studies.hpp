#pragma once

/**
 * @file studies.hpp
 * @brief Sweep studies behind the command-line subcommands. Each study
 * returns its records, the sweep points it had to skip and the outcome of
 * its checks.
 */

#include <vector>

#include "tepml/config.hpp"
#include "tepml/fem.hpp"
#include "tepml/report.hpp"

namespace tepml {

/// H1(Omega1) error of the truncated PML solution against the point-source
/// field over the sweep, with an alpha0 = 0 control when enabled. Throws
/// PreconditionFailed when a sweep point fails the constraint set.
StudyReport run_convergence_sweep(const SweepConfig& config);

/// Ray samples of the stretched kernel and the boundary surrogate norm of the
/// PML extension on the outer boundary over the sweep.
StudyReport run_decay_study(const SweepConfig& config);

/// Weighted L2 error of the discrete DtN approximation on the B1 surface over
/// the sweep, with a second-resolution floor check when h_refined > 0.
StudyReport run_dtn_error_study(const SweepConfig& config);

/// Minimum coercivity and ellipticity ratios over random fields on the
/// (zeta_grid x alpha0_grid) grid at omega = (gamma/eta) i.
StudyReport run_coercivity_study(const SweepConfig& config);

/// Constraint slacks at every alpha0 of the configuration.
StudyReport run_constraints_report(const SweepConfig& config);

/// Dispatches on config.study.
StudyReport run_study(const SweepConfig& config);

/// sqrt(sum w |approx - exact|^2) and sqrt(sum w |exact|^2) over the DtN nodes.
struct WeightedError {
  double error = 0.0;
  double exact_norm = 0.0;
  double relative() const { return exact_norm > 0.0 ? error / exact_norm : error; }
};
WeightedError dtn_weighted_error(const DtnResult& dtn, const std::vector<CVec4>& exact);

/// True when every sweep point of the main metric was skipped.
bool all_points_skipped(const StudyReport& report);

}  // namespace tepml
