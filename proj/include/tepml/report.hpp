#pragma once

/**
 * @file report.hpp
 * @brief Study records and their CSV / JSON serialization.
 */

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tepml/config.hpp"

namespace tepml {

struct ErrorRecord {
  std::string sweep_axis;
  double sweep_value = 0.0;
  std::string metric_name;
  double metric_value = 0.0;
  double predicted_exponent = 0.0;  ///< r0 alpha0 d of the sweep point
  std::optional<double> fitted_slope;
  std::size_t n_unknowns = 0;
  double solve_residual = 0.0;
  double condition_estimate = 0.0;
  double wall_ms = 0.0;

  bool operator==(const ErrorRecord&) const = default;
};

/// A sweep point without metrics.
struct SkipRecord {
  std::string sweep_axis;
  double sweep_value = 0.0;
  std::string reason;

  bool operator==(const SkipRecord&) const = default;
};

/// Outcome of one assertion made by a study.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;

  bool operator==(const CheckResult&) const = default;
};

struct StudyReport {
  std::string study;
  std::vector<ErrorRecord> records;
  std::vector<SkipRecord> skips;
  std::vector<CheckResult> checks;
  nlohmann::json config;
  std::size_t sweep_points = 0;  ///< points of the main sweep
  std::size_t solved_points = 0;  ///< main sweep points with metrics

  bool all_checks_pass() const;
  /// First record with this metric name at this sweep value, or nullptr.
  const ErrorRecord* find(const std::string& metric, double sweep_value) const;
  std::vector<const ErrorRecord*> metric(const std::string& name) const;
};

inline constexpr const char* kCsvHeader =
    "sweep_axis,sweep_value,metric_name,metric_value,predicted_exponent,fitted_slope,n_unknowns,"
    "solve_residual,wall_ms";

/// Header line plus one line per record; numbers in shortest round-trip form
/// and an empty field for a missing slope. Throws PreconditionFailed for no records.
void write_csv(const std::vector<ErrorRecord>& records, std::ostream& out);

/// Report with records, skips, checks, the config echo and the version string.
/// Throws PreconditionFailed for no records.
nlohmann::json report_to_json(const StudyReport& report);
StudyReport report_from_json(const nlohmann::json& j);

/// Writes the report to `path` ("" or "-" for stdout). Throws
/// PreconditionFailed for no records and IoError for an unwritable path.
void emit_report(const StudyReport& report, ReportFormat format, const std::string& path);

/// Version string of the build (git describe).
std::string version_string();

}  // namespace tepml
