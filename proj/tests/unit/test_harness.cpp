#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "tepml/config.hpp"
#include "tepml/errors.hpp"
#include "tepml/fit.hpp"
#include "tepml/report.hpp"
#include "tepml/studies.hpp"

namespace tepml {
namespace {

SweepConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

TEST(Config, ParsesSectionsAndLists) {
  const SweepConfig c = parse(
      "[material]\ngamma = 0.2\neta = 0.05\n"
      "[geometry]\nd = 1.5, 0.5 1\nalpha0 = 2\nl = 1 1 2\n"
      "[discretization]\nh = 0.2\nsymmetry = none\n"
      "[study]\nkind = dtn\n"
      "[output]\nformat = json\nseed = 42\n");
  EXPECT_DOUBLE_EQ(c.material.gamma, 0.2);
  EXPECT_EQ(c.sweep_axis(), "d");
  EXPECT_EQ(c.sweep_values(), (std::vector<double>{0.5, 1.0, 1.5}));
  EXPECT_EQ(c.l[2], 2.0);
  EXPECT_EQ(c.study, StudyKind::kDtn);
  EXPECT_EQ(c.format, ReportFormat::kJson);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.symmetry, Symmetry::kNone);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse("[material]\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse("[nowhere]\nh = 1\n"), ConfigError);
  EXPECT_THROW(parse("h = 1\n"), ConfigError);
  EXPECT_THROW(parse("[discretization]\nh = abc\n"), ConfigError);
  EXPECT_THROW(parse("[geometry]\nl = 1 2\n"), ConfigError);
  EXPECT_THROW(parse("[material]\nlame_mu = -1\n"), ConfigError);
  EXPECT_THROW(parse("[geometry]\nd = 1 2\nalpha0 = 1 2\n"), ConfigError);
  EXPECT_THROW(parse("[study]\nkind = nonsense\n"), ConfigError);
  EXPECT_THROW(parse("[geometry]\nsource = 0.1 0 0\n"), ConfigError);  // off-center with octant symmetry
  EXPECT_THROW(load_config("/nonexistent/file.ini"), ConfigError);
}

TEST(Config, StudyNamesRoundTrip) {
  for (StudyKind k : {StudyKind::kConvergence, StudyKind::kDecay, StudyKind::kDtn, StudyKind::kCoercivity,
                      StudyKind::kConstraints})
    EXPECT_EQ(study_from_name(study_name(k)), k);
}

TEST(Fit, RecoversAnExactLine) {
  const std::vector<double> x{0.5, 1.0, 2.0, 3.5};
  std::vector<double> e;
  for (double v : x) e.push_back(3.0 * std::exp(-1.7 * v));
  const auto f = fit_log_linear(x, e);
  ASSERT_TRUE(f.has_value());
  EXPECT_NEAR(f->slope, -1.7, 1e-10);
  EXPECT_NEAR(f->intercept, std::log(3.0), 1e-10);
  EXPECT_EQ(f->points, 4u);
}

TEST(Fit, TooFewPointsGiveNoFit) {
  EXPECT_FALSE(fit_log_linear({1.0}, {0.1}).has_value());
  EXPECT_FALSE(fit_log_linear({1.0, 2.0}, {0.1, 0.01}).has_value());
  EXPECT_THROW(least_squares({1.0}, {1.0}), PreconditionFailed);
  EXPECT_THROW(least_squares({1.0, 1.0}, {1.0, 2.0}), PreconditionFailed);
  EXPECT_THROW(fit_log_linear({1.0, 2.0, 3.0}, {0.1, 0.0, 0.01}), PreconditionFailed);
}

TEST(Fit, FloorSplitUsesTheLastPoint) {
  const FloorSplit s = split_pre_floor({0.5, 0.2, 0.03, 0.01, 0.002}, 10.0);
  EXPECT_DOUBLE_EQ(s.floor, 0.002);
  EXPECT_EQ(s.pre_floor, (std::vector<std::size_t>{0, 1, 2}));
}

StudyReport sample_report() {
  StudyReport r;
  r.study = "dtn";
  r.records.push_back({"d", 0.5, "dtn_relative_error", 0.1, 0.0721, -2.5, 1234, 1e-13, 1e-9, 12.5});
  r.records.push_back({"d", 1.0, "dtn_relative_error", 0.01, 0.1443, std::nullopt, 5678, 2e-13, 1e-8, 30.0});
  r.skips.push_back({"d", 2.0, "solver breakdown"});
  r.checks.push_back({"pre_floor_slope", true, "slope -2.5"});
  r.config = config_to_json(SweepConfig{});
  r.sweep_points = 3;
  r.solved_points = 2;
  return r;
}

TEST(Report, CsvHasTheExactHeader) {
  std::ostringstream out;
  write_csv(sample_report().records, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line,
            "sweep_axis,sweep_value,metric_name,metric_value,predicted_exponent,fitted_slope,n_unknowns,"
            "solve_residual,wall_ms");
  std::getline(in, line);
  EXPECT_EQ(line, "d,0.5,dtn_relative_error,0.1,0.0721,-2.5,1234,1e-13,12.5");
  std::getline(in, line);
  EXPECT_EQ(line.substr(0, 44), "d,1,dtn_relative_error,0.01,0.1443,,5678,2e-");
}

TEST(Report, JsonRoundTrip) {
  const StudyReport r = sample_report();
  const nlohmann::json j = report_to_json(r);
  EXPECT_EQ(j.at("version").get<std::string>(), version_string());
  const StudyReport back = report_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.study, r.study);
  EXPECT_EQ(back.records, r.records);
  EXPECT_EQ(back.skips, r.skips);
  EXPECT_EQ(back.checks, r.checks);
  EXPECT_EQ(back.config, r.config);
  EXPECT_EQ(back.sweep_points, 3u);
  EXPECT_EQ(back.solved_points, 2u);
}

TEST(Report, EmptyRecordsAreRejected) {
  StudyReport r = sample_report();
  r.records.clear();
  std::ostringstream out;
  EXPECT_THROW(write_csv(r.records, out), PreconditionFailed);
  EXPECT_THROW(report_to_json(r), PreconditionFailed);
  EXPECT_THROW(emit_report(r, ReportFormat::kCsv, "-"), PreconditionFailed);
}

TEST(Report, UnwritablePathRaisesIoError) {
  EXPECT_THROW(emit_report(sample_report(), ReportFormat::kJson, "/nonexistent/dir/out.json"), IoError);
}

TEST(Report, Lookups) {
  const StudyReport r = sample_report();
  ASSERT_NE(r.find("dtn_relative_error", 1.0), nullptr);
  EXPECT_EQ(r.find("dtn_relative_error", 1.0)->n_unknowns, 5678u);
  EXPECT_EQ(r.find("other", 1.0), nullptr);
  EXPECT_EQ(r.metric("dtn_relative_error").size(), 2u);
  EXPECT_TRUE(r.all_checks_pass());
}

SweepConfig small_convergence() {
  return parse(
      "[material]\neta = 0.05\n"
      "[geometry]\nd = 0.5 0.75 1\n"
      "[discretization]\nh = 0.25\n"
      "[study]\nkind = converge\ncontrol = false\n");
}

std::vector<ErrorRecord> without_timing(std::vector<ErrorRecord> r) {
  for (auto& e : r) e.wall_ms = 0.0;
  return r;
}

TEST(Studies, SweepsAreDeterministic) {
  const SweepConfig c = small_convergence();
  const StudyReport a = run_study(c), b = run_study(c);
  EXPECT_EQ(without_timing(a.records), without_timing(b.records));
  EXPECT_EQ(a.sweep_points, 3u);
  EXPECT_EQ(a.solved_points, 3u);
  EXPECT_FALSE(all_points_skipped(a));
  for (const ErrorRecord* e : a.metric("h1_relative_error")) {
    EXPECT_GT(e->metric_value, 0.0);
    EXPECT_GT(e->n_unknowns, 0u);
  }
}

TEST(Studies, SinglePointGivesNoSlope) {
  SweepConfig c = small_convergence();
  c.d_values = {0.5};
  const StudyReport r = run_study(c);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_FALSE(r.records[0].fitted_slope.has_value());
}

TEST(Studies, ConstraintsReportIsDeterministic) {
  SweepConfig c;
  c.study = StudyKind::kConstraints;
  c.alpha0_values = {0.5, 1.0, 2.0};
  const StudyReport a = run_study(c), b = run_study(c);
  EXPECT_EQ(without_timing(a.records), without_timing(b.records));
  EXPECT_FALSE(a.records.empty());
}

TEST(Studies, WeightedErrorVanishesForExactValues) {
  DtnResult d;
  d.nodes = {0, 1};
  d.normals = {Vec3::UnitX(), Vec3::UnitY()};
  d.weights = {0.5, 0.25};
  d.values = {CVec4(1.0, 2.0, 0.0, I), CVec4(0.0, 0.0, 3.0, 0.0)};
  const WeightedError e = dtn_weighted_error(d, d.values);
  EXPECT_EQ(e.error, 0.0);
  EXPECT_NEAR(e.exact_norm, std::sqrt(0.5 * 6.0 + 0.25 * 9.0), 1e-14);
  EXPECT_THROW(dtn_weighted_error(d, {CVec4::Zero()}), PreconditionFailed);
}

}  // namespace
}  // namespace tepml
