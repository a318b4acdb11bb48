#include "tepml/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "tepml/errors.hpp"

#ifndef TEPML_VERSION
#define TEPML_VERSION "unknown"
#endif

namespace tepml {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void require_records(const std::vector<ErrorRecord>& records) {
  if (records.empty()) throw PreconditionFailed("report has no records");
}

}  // namespace

std::string version_string() { return TEPML_VERSION; }

bool StudyReport::all_checks_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const ErrorRecord* StudyReport::find(const std::string& metric, double value) const {
  for (const auto& r : records)
    if (r.metric_name == metric && r.sweep_value == value) return &r;
  return nullptr;
}

std::vector<const ErrorRecord*> StudyReport::metric(const std::string& name) const {
  std::vector<const ErrorRecord*> out;
  for (const auto& r : records)
    if (r.metric_name == name) out.push_back(&r);
  return out;
}

void write_csv(const std::vector<ErrorRecord>& records, std::ostream& out) {
  require_records(records);
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", csv_field(r.sweep_axis), r.sweep_value,
                       csv_field(r.metric_name), r.metric_value, r.predicted_exponent,
                       r.fitted_slope ? fmt::format("{}", *r.fitted_slope) : std::string(),
                       r.n_unknowns, r.solve_residual, r.wall_ms);
  }
}

nlohmann::json report_to_json(const StudyReport& rep) {
  require_records(rep.records);
  using nlohmann::json;
  json j;
  j["study"] = rep.study;
  j["version"] = version_string();
  j["config"] = rep.config;
  j["sweep_points"] = rep.sweep_points;
  j["solved_points"] = rep.solved_points;
  j["records"] = json::array();
  for (const auto& r : rep.records) {
    j["records"].push_back({{"sweep_axis", r.sweep_axis},
                            {"sweep_value", r.sweep_value},
                            {"metric_name", r.metric_name},
                            {"metric_value", r.metric_value},
                            {"predicted_exponent", r.predicted_exponent},
                            {"fitted_slope", r.fitted_slope ? json(*r.fitted_slope) : json(nullptr)},
                            {"n_unknowns", r.n_unknowns},
                            {"solve_residual", r.solve_residual},
                            {"condition_estimate", r.condition_estimate},
                            {"wall_ms", r.wall_ms}});
  }
  j["skips"] = json::array();
  for (const auto& s : rep.skips)
    j["skips"].push_back({{"sweep_axis", s.sweep_axis}, {"sweep_value", s.sweep_value}, {"reason", s.reason}});
  j["checks"] = json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return j;
}

StudyReport report_from_json(const nlohmann::json& j) {
  StudyReport rep;
  try {
    rep.study = j.at("study").get<std::string>();
    rep.config = j.value("config", nlohmann::json());
    rep.sweep_points = j.at("sweep_points").get<std::size_t>();
    rep.solved_points = j.at("solved_points").get<std::size_t>();
    for (const auto& r : j.at("records")) {
      ErrorRecord e;
      e.sweep_axis = r.at("sweep_axis").get<std::string>();
      e.sweep_value = r.at("sweep_value").get<double>();
      e.metric_name = r.at("metric_name").get<std::string>();
      e.metric_value = r.at("metric_value").get<double>();
      e.predicted_exponent = r.at("predicted_exponent").get<double>();
      if (!r.at("fitted_slope").is_null()) e.fitted_slope = r.at("fitted_slope").get<double>();
      e.n_unknowns = r.at("n_unknowns").get<std::size_t>();
      e.solve_residual = r.at("solve_residual").get<double>();
      e.condition_estimate = r.at("condition_estimate").get<double>();
      e.wall_ms = r.at("wall_ms").get<double>();
      rep.records.push_back(std::move(e));
    }
    for (const auto& s : j.at("skips"))
      rep.skips.push_back({s.at("sweep_axis").get<std::string>(), s.at("sweep_value").get<double>(),
                           s.at("reason").get<std::string>()});
    for (const auto& c : j.at("checks"))
      rep.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                            c.at("detail").get<std::string>()});
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed report: ") + e.what());
  }
  return rep;
}

void emit_report(const StudyReport& rep, ReportFormat format, const std::string& path) {
  require_records(rep.records);
  std::ostringstream buf;
  if (format == ReportFormat::kCsv)
    write_csv(rep.records, buf);
  else
    buf << report_to_json(rep).dump(2) << '\n';
  if (path.empty() || path == "-") {
    std::cout << buf.str() << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open report file for writing: " + path);
  out << buf.str();
  out.flush();
  if (!out) throw IoError("failed writing report file: " + path);
}

}  // namespace tepml
