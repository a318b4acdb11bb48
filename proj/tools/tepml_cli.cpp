#include <cstdint>
#include <iostream>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "tepml/config.hpp"
#include "tepml/errors.hpp"
#include "tepml/parallel.hpp"
#include "tepml/report.hpp"
#include "tepml/studies.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kConfigError = 2, kAllSkipped = 3 };

struct Options {
  std::string config;
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  int threads = 0;
  bool quiet = false;
};

int run(const std::string& subcommand, const Options& opt, CLI::App& app) {
  using namespace tepml;
  SweepConfig cfg;
  if (!opt.config.empty()) cfg = load_config(opt.config);
  cfg.study = study_from_name(subcommand);
  if (app.count("--out")) cfg.output_path = opt.out;
  if (app.count("--format")) cfg.format = opt.format == "json" ? ReportFormat::kJson : ReportFormat::kCsv;
  if (app.count("--seed")) cfg.seed = opt.seed;
  if (app.count("--threads")) cfg.threads = opt.threads;
  cfg.validate();
  set_thread_count(cfg.threads);

  const StudyReport report = run_study(cfg);
  for (const auto& s : report.skips) spdlog::warn("skipped {} = {}: {}", s.sweep_axis, s.sweep_value, s.reason);
  if (all_points_skipped(report)) {
    spdlog::error("solver breakdown at every sweep point");
    if (!report.records.empty()) emit_report(report, cfg.format, cfg.output_path);
    return kAllSkipped;
  }
  emit_report(report, cfg.format, cfg.output_path);
  for (const auto& c : report.checks)
    spdlog::info("check {}: {} ({})", c.name, c.pass ? "pass" : "FAIL", c.detail);
  return report.all_checks_pass() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("tepml");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S] [%^%l%$] %v");

  CLI::App app{"Thermoelastic PML verification studies"};
  app.set_version_flag("--version", tepml::version_string());
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", opt.out, "report path ('-' for stdout)");
  app.add_option("--format", opt.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", opt.seed, "seed for randomized probes");
  app.add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", opt.quiet, "log warnings and errors only");
  const char* subs[][2] = {{"converge", "H1 error of the truncated PML solution over a d or alpha0 sweep"},
                           {"decay", "stretched-kernel rays and PML-extension surrogate norms"},
                           {"dtn", "error of the discrete DtN approximation over the sweep"},
                           {"coercivity", "coercivity and ellipticity probes on a (zeta, alpha0) grid"},
                           {"constraints", "slacks of the PML admissibility conditions"}};
  for (const auto& s : subs) app.add_subcommand(s[0], s[1])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  if (opt.quiet) spdlog::set_level(spdlog::level::warn);

  try {
    return run(app.get_subcommands().front()->get_name(), opt, app);
  } catch (const tepml::ConfigError& e) {
    spdlog::error("configuration error: {}", e.what());
    return kConfigError;
  } catch (const tepml::PreconditionFailed& e) {
    spdlog::error("precondition failed: {}", e.what());
    return kConfigError;
  } catch (const tepml::IoError& e) {
    spdlog::error("I/O error: {}", e.what());
    return kConfigError;
  } catch (const tepml::SolverBreakdown& e) {
    spdlog::error("solver breakdown: {}", e.what());
    return kAllSkipped;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kCheckFailed;
  }
}
