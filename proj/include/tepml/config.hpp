#pragma once

/**
 * @file config.hpp
 * @brief Study configuration read from an INI file with the sections
 * [material], [geometry], [discretization], [study] and [output].
 *
 * Unknown sections or keys are errors. List values (d, alpha0, zeta_grid,
 * alpha0_grid) are separated by commas or whitespace; vectors (l, obstacle,
 * source) take three numbers or one number applied to every axis.
 */

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tepml/fem.hpp"
#include "tepml/material.hpp"
#include "tepml/mesh.hpp"
#include "tepml/pml_geometry.hpp"

namespace tepml {

enum class StudyKind { kConvergence, kDecay, kDtn, kCoercivity, kConstraints };
enum class ReportFormat { kCsv, kJson };

/// "converge", "decay", "dtn", "coercivity" or "constraints".
StudyKind study_from_name(const std::string& name);
std::string study_name(StudyKind kind);

struct SweepConfig {
  // [material]
  MaterialParams material{1.0, 1.0, 1.0, 0.1, 0.05, 1.0, {1.0, 0.0}};

  // [geometry]
  Axes l{1.0, 1.0, 1.0};
  Axes obstacle{0.4, 0.4, 0.4};
  std::vector<double> d_values{1.0};
  std::vector<double> alpha0_values{1.0};
  double zeta = 2.5;
  double ramp_fraction = 0.5;  ///< lbar_j = l_j + ramp_fraction * d
  Vec3 source = Vec3::Zero();
  int source_column = 0;

  // [discretization]
  double h = 0.1;
  double h_layer = 0.0;
  double layer_growth = 1.2;
  double h_refined = 0.0;  ///< second resolution for the floor check (0 = off)
  int n_per_edge = 24;
  int surface_samples = 6;
  double fd_step = 1e-3;
  Symmetry symmetry = Symmetry::kOctant;
  FluxRecovery flux = FluxRecovery::kVariational;
  SolverKind solver = SolverKind::kAuto;
  FillOrdering ordering = FillOrdering::kMetis;

  // [study]
  StudyKind study = StudyKind::kConvergence;
  double floor_factor = 10.0;
  double slope_slack = 0.75;
  bool control = true;  ///< alpha0 = 0 control runs
  int min_fit_points = 3;
  int rays = 4;
  int ray_samples = 200;
  std::vector<double> zeta_grid{2.5};
  std::vector<double> alpha0_grid{1.0};
  int fields = 200;
  int cells = 16;

  // [output]
  std::string output_path;  ///< empty or "-" writes to stdout
  ReportFormat format = ReportFormat::kCsv;
  std::uint64_t seed = 1;
  std::string field_dump;  ///< VTK file prefix for solution dumps (empty = off)
  int threads = 1;

  /// "d" or "alpha0": the list with more than one entry ("d" when both are single).
  std::string sweep_axis() const;
  /// Sweep values in ascending order.
  std::vector<double> sweep_values() const;
  /// Profile at one sweep value.
  PmlProfile profile_at(double sweep_value) const;
  /// Profile with explicit thickness and absorption.
  PmlProfile profile(double d, double alpha0) const;

  /// Throws ConfigError when a block fails its validation or both lists sweep.
  void validate() const;
};

SweepConfig parse_config(std::istream& in);
/// Throws ConfigError when the file cannot be read or parsed.
SweepConfig load_config(const std::string& path);

nlohmann::json config_to_json(const SweepConfig& config);

}  // namespace tepml
