#include "tepml/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "tepml/errors.hpp"
#include "tepml/field_io.hpp"
#include "tepml/fit.hpp"
#include "tepml/potentials.hpp"
#include "tepml/probes.hpp"

namespace tepml {

namespace {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

double predicted_exponent(const PmlProfile& p) { return r0_constant(p) * p.alpha0() * p.dmin(); }

StudyReport new_report(const SweepConfig& cfg, const std::string& study) {
  StudyReport rep;
  rep.study = study;
  rep.config = config_to_json(cfg);
  return rep;
}

SolveOptions solve_options(const SweepConfig& cfg) {
  SolveOptions o;
  o.solver = cfg.solver;
  o.ordering = cfg.ordering;
  return o;
}

MeshOptions mesh_options(const SweepConfig& cfg, MeshDomain domain, double h) {
  MeshOptions o;
  o.h_target = h;
  o.h_layer = cfg.h_layer;
  o.layer_growth = cfg.layer_growth;
  o.domain = domain;
  o.symmetry = cfg.symmetry;
  return o;
}

void require_constraints(const SweepConfig& cfg) {
  for (double v : cfg.sweep_values()) {
    const PmlProfile p = cfg.profile_at(v);
    const ConstraintReport r = check_pml_constraints(cfg.material, p.zeta(), p.alpha0());
    if (!r.all_pass())
      throw PreconditionFailed(fmt::format("constraint set fails at {} = {}:\n{}", cfg.sweep_axis(), v,
                                           r.summary()));
  }
}

/// Fits log(metric) against alpha0 d over the pre-floor points of `rows`
/// (ordered by sweep value), marks the fitted rows and appends the slope check.
void fit_and_check(StudyReport& rep, const std::vector<std::size_t>& rows,
                   const std::vector<PmlProfile>& profiles, const SweepConfig& cfg,
                   const std::string& check_name, bool use_floor) {
  if (rows.size() < std::size_t(cfg.min_fit_points)) {
    if (cfg.sweep_values().size() >= std::size_t(cfg.min_fit_points))
      rep.checks.push_back({check_name, false,
                            fmt::format("only {} solved sweep points, {} needed for a fit",
                                        rows.size(), cfg.min_fit_points)});
    return;
  }
  std::vector<double> err;
  for (std::size_t r : rows) err.push_back(rep.records[r].metric_value);
  std::vector<std::size_t> use(rows.size());
  for (std::size_t i = 0; i < use.size(); ++i) use[i] = i;
  double floor = 0.0;
  if (use_floor) {
    const FloorSplit split = split_pre_floor(err, cfg.floor_factor);
    use = split.pre_floor;
    floor = split.floor;
  }
  std::vector<double> x, y;
  double r0_max = 0.0;
  for (std::size_t i : use) {
    x.push_back(profiles[i].alpha0() * profiles[i].dmin());
    y.push_back(err[i]);
    r0_max = std::max(r0_max, r0_constant(profiles[i]));
  }
  const auto fit = fit_log_linear(x, y, std::size_t(cfg.min_fit_points));
  if (!fit) {
    rep.checks.push_back(
        {check_name, false,
         fmt::format("{} of {} points lie above {} x floor ({:.4g}); {} needed for a fit", use.size(),
                     rows.size(), cfg.floor_factor, floor, cfg.min_fit_points)});
    return;
  }
  for (std::size_t i : use) rep.records[rows[i]].fitted_slope = fit->slope;
  const double bound = -cfg.slope_slack * r0_max;
  rep.checks.push_back(
      {check_name, fit->slope <= bound,
       fmt::format("slope {:.4g} over {} points (bound {:.4g} = -{} r0, r0 = {:.4g}){}", fit->slope,
                   use.size(), bound, cfg.slope_slack, r0_max,
                   use_floor ? fmt::format(", floor {:.4g}", floor) : std::string())});
}

void check_control(StudyReport& rep, const std::string& metric) {
  const auto rows = rep.metric(metric);
  if (rows.empty()) return;
  bool pass = true;
  for (const auto* r : rows) pass = pass && r->metric_value >= 0.1;
  if (rows.size() >= 2) pass = pass && rows.back()->metric_value >= 0.5 * rows.front()->metric_value;
  rep.checks.push_back({"control_no_decay", pass,
                        fmt::format("alpha0 = 0 errors from {:.4g} to {:.4g} (need >= 0.1 and no decay)",
                                    rows.front()->metric_value, rows.back()->metric_value)});
}

struct PointOutcome {
  double metric = 0.0;
  std::size_t n_unknowns = 0;
  double residual = 0.0;
  double rcond = 0.0;
};

ErrorRecord make_record(const std::string& axis, double value, const std::string& metric,
                        const PointOutcome& o, const PmlProfile& p, double ms) {
  ErrorRecord r;
  r.sweep_axis = axis;
  r.sweep_value = value;
  r.metric_name = metric;
  r.metric_value = o.metric;
  r.predicted_exponent = predicted_exponent(p);
  r.n_unknowns = o.n_unknowns;
  r.solve_residual = o.residual;
  r.condition_estimate = o.rcond;
  r.wall_ms = ms;
  return r;
}

PointOutcome convergence_point(const SweepConfig& cfg, const PmlProfile& profile,
                               const PointSource& src, const std::string& dump_path) {
  auto mesh = std::make_shared<const HexMesh>(
      build_mesh(profile, cfg.obstacle, mesh_options(cfg, MeshDomain::kOmega2, cfg.h)));
  const AssembledSystem sys = assemble_B(mesh, cfg.material, profile);
  const DirichletSet dir = make_dirichlet(
      *mesh, kTagObstacle | kTagOuter,
      [&](const Vec3& x) {
        for (int j = 0; j < 3; ++j)
          if (std::abs(x[j]) > cfg.obstacle[j] + 1e-12) return CVec4(CVec4::Zero());
        return src.value(x);
      },
      cfg.source_column);
  const SolveResult res = solve(sys, dir, solve_options(cfg));
  const H1Error err = h1_error(res.field, [&](const Vec3& x) { return src.eval(x); });
  if (!dump_path.empty()) write_vtk(dump_path, res.field);
  return {err.relative(), res.n_unknowns, res.residual, res.rcond};
}

PointOutcome dtn_point(const SweepConfig& cfg, const PmlProfile& profile, const PointSource& src,
                       double h) {
  auto mesh = std::make_shared<const HexMesh>(
      build_mesh(profile, cfg.obstacle, mesh_options(cfg, MeshDomain::kPmlLayer, h)));
  const DtnResult dtn =
      apply_discrete_dtn_hat(mesh, [&](const Vec3& x) { return src.value(x); }, cfg.material, profile,
                             cfg.flux, cfg.source_column, solve_options(cfg));
  std::vector<CVec4> exact(dtn.nodes.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const ColumnField f = src.eval(mesh->nodes[std::size_t(dtn.nodes[i])]);
    exact[i] = apply_R(f.value, f.grad, dtn.normals[i], cfg.material);
  }
  return {dtn_weighted_error(dtn, exact).relative(), dtn.solve.n_unknowns, dtn.solve.residual,
          dtn.solve.rcond};
}

/// Runs `point` over the sweep (and the alpha0 = 0 control), skipping and
/// logging solver breakdowns.
template <class PointFn>
void run_fem_sweep(StudyReport& rep, const SweepConfig& cfg, const std::string& metric,
                   const PointFn& point, std::vector<std::size_t>& rows,
                   std::vector<PmlProfile>& profiles) {
  const std::string axis = cfg.sweep_axis();
  for (int control = 0; control < (cfg.control ? 2 : 1); ++control) {
    for (double v : cfg.sweep_values()) {
      PmlProfile p = cfg.profile_at(v);
      if (control) p = p.with_alpha0(0.0);
      const std::string name = control ? metric + "_control" : metric;
      Stopwatch sw;
      try {
        const PointOutcome o = point(p, control != 0, v);
        rep.records.push_back(make_record(axis, v, name, o, p, sw.ms()));
        spdlog::info("{} {} = {}: {} = {:.6g} ({} unknowns, {:.1f} s)", rep.study, axis, v, name,
                     o.metric, o.n_unknowns, sw.ms() / 1000.0);
        if (!control) {
          rows.push_back(rep.records.size() - 1);
          profiles.push_back(p);
          ++rep.solved_points;
        }
      } catch (const SolverBreakdown& e) {
        spdlog::warn("{} {} = {}: skipped ({})", rep.study, axis, v, e.what());
        rep.skips.push_back({axis, v, fmt::format("{}{}", control ? "control: " : "", e.what())});
      }
    }
  }
}

std::string dump_path(const SweepConfig& cfg, const std::string& axis, double v, bool control) {
  if (cfg.field_dump.empty()) return {};
  return fmt::format("{}_{}{}{}.vtk", cfg.field_dump, axis, v, control ? "_control" : "");
}

/// Exit parameters of the ray y + t u from the centered box.
double box_exit(const Vec3& y, const Vec3& u, const Axes& hw) {
  double t = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 3; ++j)
    if (u[j] != 0.0) t = std::min(t, ((u[j] > 0 ? hw[j] : -hw[j]) - y[j]) / u[j]);
  return t;
}

void ray_study(StudyReport& rep, const SweepConfig& cfg, const KernelContext& ctx) {
  const PmlProfile p = cfg.profile_at(cfg.sweep_values().back());
  const double cap = ctx.waves.cap_lambda;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  bool bounded = true;
  double worst_excess = -std::numeric_limits<double>::infinity(), worst_slope = -1e300;
  for (int k = 0; k < cfg.rays; ++k) {
    Vec3 u(normal(rng), normal(rng), normal(rng));
    u.normalize();
    const double t1 = box_exit(cfg.source, u, p.l()), t2 = box_exit(cfg.source, u, p.outer());
    std::vector<double> x, v;
    const std::string name = fmt::format("ray{}_log_phi44", k);
    for (int s = 0; s < cfg.ray_samples; ++s) {
      const double t = t1 + (t2 - t1) * double(s) / double(cfg.ray_samples - 1);
      const Vec3 pt = cfg.source + t * u;
      const double mag = std::abs(eval_phi_stretched(pt, cfg.source, p, ctx)(3, 3));
      const double im_d = complex_distance(p, pt, cfg.source).imag();
      ErrorRecord r;
      r.sweep_axis = "lambda_im_d";
      r.sweep_value = cap * im_d;
      r.metric_name = name;
      r.metric_value = std::log(mag);
      r.predicted_exponent = predicted_exponent(p);
      rep.records.push_back(r);
      x.push_back(cap * im_d);
      v.push_back(std::log(mag) + cap * im_d);
    }
    const LinearFit fit = least_squares(x, v);
    const double excess = *std::max_element(v.begin(), v.end()) - v.front();
    ErrorRecord r;
    r.sweep_axis = "ray";
    r.sweep_value = k;
    r.metric_name = "ray_envelope_excess";
    r.metric_value = excess;
    r.predicted_exponent = predicted_exponent(p);
    r.fitted_slope = fit.slope;
    rep.records.push_back(r);
    bounded = bounded && excess <= 1e-12 * std::max(1.0, std::abs(v.front())) && fit.slope <= 0.0;
    worst_excess = std::max(worst_excess, excess);
    worst_slope = std::max(worst_slope, fit.slope);
  }
  rep.checks.push_back(
      {"ray_envelope_bounded", bounded,
       fmt::format("log|Phi44~| + Lambda Im d stays below its B1 value on {} rays (max excess {:.3g}, "
                   "max slope {:.4g})",
                   cfg.rays, worst_excess, worst_slope)});
}

}  // namespace

WeightedError dtn_weighted_error(const DtnResult& dtn, const std::vector<CVec4>& exact) {
  if (exact.size() != dtn.values.size()) throw PreconditionFailed("exact data size mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    num += dtn.weights[i] * (dtn.values[i] - exact[i]).squaredNorm();
    den += dtn.weights[i] * exact[i].squaredNorm();
  }
  return {std::sqrt(num), std::sqrt(den)};
}

bool all_points_skipped(const StudyReport& rep) {
  return rep.sweep_points > 0 && rep.solved_points == 0;
}

StudyReport run_convergence_sweep(const SweepConfig& cfg) {
  cfg.validate();
  require_constraints(cfg);
  StudyReport rep = new_report(cfg, "converge");
  rep.sweep_points = cfg.sweep_values().size();
  const KernelContext ctx = KernelContext::make(cfg.material);
  const PointSource src(cfg.source, cfg.source_column, cfg.obstacle, ctx);
  std::vector<std::size_t> rows;
  std::vector<PmlProfile> profiles;
  run_fem_sweep(rep, cfg, "h1_relative_error",
                [&](const PmlProfile& p, bool control, double v) {
                  return convergence_point(cfg, p, src, dump_path(cfg, cfg.sweep_axis(), v, control));
                },
                rows, profiles);
  fit_and_check(rep, rows, profiles, cfg, "pre_floor_slope", true);
  check_control(rep, "h1_relative_error_control");
  return rep;
}

StudyReport run_dtn_error_study(const SweepConfig& cfg) {
  cfg.validate();
  require_constraints(cfg);
  StudyReport rep = new_report(cfg, "dtn");
  rep.sweep_points = cfg.sweep_values().size();
  const KernelContext ctx = KernelContext::make(cfg.material);
  const PointSource src(cfg.source, cfg.source_column, cfg.obstacle, ctx);
  std::vector<std::size_t> rows;
  std::vector<PmlProfile> profiles;
  run_fem_sweep(rep, cfg, "dtn_relative_error",
                [&](const PmlProfile& p, bool, double) { return dtn_point(cfg, p, src, cfg.h); }, rows,
                profiles);
  fit_and_check(rep, rows, profiles, cfg, "pre_floor_slope", true);
  check_control(rep, "dtn_relative_error_control");

  if (cfg.h_refined > 0.0 && !rows.empty()) {
    const double v = cfg.sweep_values().back();
    const ErrorRecord* coarse = rep.find("dtn_relative_error", v);
    const PmlProfile p = cfg.profile_at(v);
    Stopwatch sw;
    try {
      const PointOutcome o = dtn_point(cfg, p, src, cfg.h_refined);
      rep.records.push_back(make_record(cfg.sweep_axis(), v, "dtn_relative_error_refined", o, p, sw.ms()));
      spdlog::info("dtn {} = {}: refined error {:.6g} ({} unknowns, {:.1f} s)", cfg.sweep_axis(), v,
                   o.metric, o.n_unknowns, sw.ms() / 1000.0);
      const bool drops = coarse && o.metric < coarse->metric_value;
      rep.checks.push_back(
          {"floor_drops_under_refinement", drops,
           fmt::format("error at {} = {}: {:.4g} at h = {}, {:.4g} at h = {}", cfg.sweep_axis(), v,
                       coarse ? coarse->metric_value : std::nan(""), cfg.h, o.metric, cfg.h_refined)});
    } catch (const SolverBreakdown& e) {
      spdlog::warn("dtn refined point skipped ({})", e.what());
      rep.skips.push_back({cfg.sweep_axis(), v, fmt::format("refined: {}", e.what())});
      rep.checks.push_back({"floor_drops_under_refinement", false, "refined solve failed"});
    }
  }
  return rep;
}

StudyReport run_decay_study(const SweepConfig& cfg) {
  cfg.validate();
  StudyReport rep = new_report(cfg, "decay");
  const KernelContext ctx = KernelContext::make(cfg.material);
  ray_study(rep, cfg, ctx);

  const PointSource src(cfg.source, cfg.source_column, cfg.obstacle, ctx);
  auto quad = std::make_shared<const SurfaceQuadrature>(build_surface_quadrature(cfg.l, cfg.n_per_edge));
  const BoundaryData f = src.trace(quad), Nf = src.traction(quad);
  const std::string axis = cfg.sweep_axis();
  const auto values = cfg.sweep_values();
  rep.sweep_points = values.size();
  std::vector<std::size_t> rows;
  std::vector<PmlProfile> profiles;
  for (double v : values) {
    const PmlProfile p = cfg.profile_at(v);
    Stopwatch sw;
    const SurfaceSamples s = sample_pml_extension(f, Nf, p.outer(), cfg.surface_samples, p, ctx, cfg.fd_step);
    PointOutcome o;
    o.metric = boundary_norm_surrogate(s.values, s.gradients, p.dmin());
    rep.records.push_back(make_record(axis, v, "extension_surrogate", o, p, sw.ms()));
    spdlog::info("decay {} = {}: extension surrogate {:.6g} ({:.1f} s)", axis, v, o.metric, sw.ms() / 1000.0);
    rows.push_back(rep.records.size() - 1);
    profiles.push_back(p);
    ++rep.solved_points;
  }
  fit_and_check(rep, rows, profiles, cfg, "extension_slope", false);

  if (cfg.control) {
    // without absorption the extension is the radiating field itself
    const double v = values.front();
    const PmlProfile p = cfg.profile_at(v).with_alpha0(0.0);
    Stopwatch sw;
    const SurfaceSamples s = sample_pml_extension(f, Nf, p.outer(), cfg.surface_samples, p, ctx, cfg.fd_step);
    PointOutcome o;
    o.metric = boundary_norm_surrogate(s.values, s.gradients, p.dmin());
    std::vector<CVec4> ev;
    std::vector<CGrad4> eg;
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const ColumnField c = src.eval(s.points[i]);
      CGrad4 g = c.grad;
      g.col(s.face[i] / 2).setZero();
      ev.push_back(c.value);
      eg.push_back(g);
    }
    PointOutcome e;
    e.metric = boundary_norm_surrogate(ev, eg, p.dmin());
    rep.records.push_back(make_record(axis, v, "extension_surrogate_control", o, p, sw.ms()));
    rep.records.push_back(make_record(axis, v, "exact_field_surrogate", e, p, 0.0));
    const double ratio = o.metric / e.metric;
    rep.checks.push_back({"control_no_decay", std::abs(ratio - 1.0) <= 0.05,
                          fmt::format("alpha0 = 0 surrogate / exact field surrogate = {:.4f}", ratio)});
  }
  return rep;
}

StudyReport run_coercivity_study(const SweepConfig& cfg) {
  cfg.validate();
  StudyReport rep = new_report(cfg, "coercivity");
  MaterialParams params = cfg.material;
  params.omega = special_frequency(params);
  const double d = cfg.d_values.front();
  const double zeta_elliptic = std::sqrt(params.p_modulus() / params.lame_mu);
  bool coercive = true, elliptic = true, any_admissible = false, any_elliptic = false;
  std::string coercive_detail, elliptic_detail;
  std::size_t point = 0;
  rep.sweep_points = cfg.zeta_grid.size() * cfg.alpha0_grid.size();
  for (double zeta : cfg.zeta_grid) {
    for (double a0 : cfg.alpha0_grid) {
      const std::string tag = fmt::format("@alpha0={}", a0);
      Stopwatch sw;
      const PmlProfile p = PmlProfile::with_ramp_fraction(cfg.l, {d, d, d}, a0, zeta, cfg.ramp_fraction);
      const ConstraintReport cons = check_pml_constraints(params, zeta, a0);
      const bool admissible = cons.all_pass();
      for (const auto& e : cons.entries) {
        PointOutcome o;
        o.metric = e.slack;
        rep.records.push_back(make_record("zeta", zeta, "slack:" + e.name + tag, o, p, 0.0));
      }
      PointOutcome adm;
      adm.metric = admissible ? 1.0 : 0.0;
      rep.records.push_back(make_record("zeta", zeta, "admissible" + tag, adm, p, 0.0));

      double hmax = 0.0;
      for (int j = 0; j < 3; ++j) hmax = std::max(hmax, 2.0 * (cfg.l[j] + d) / cfg.cells);
      MeshOptions mo;
      mo.h_target = hmax;
      mo.domain = MeshDomain::kOmega2;
      mo.symmetry = Symmetry::kNone;
      const HexMesh mesh = build_mesh(p, cfg.obstacle, mo);
      const CoercivityProbe probe(mesh, params, p, false);
      std::mt19937_64 rng(cfg.seed + point);
      double min_coercive = std::numeric_limits<double>::infinity(), min_elliptic = min_coercive;
      for (int f = 0; f < cfg.fields; ++f) {
        const auto [elliptic_ratio, coercive_ratio] = probe.ratios(random_boundary_free_field(mesh, rng, f % 2 == 1));
        min_coercive = std::min(min_coercive, coercive_ratio);
        min_elliptic = std::min(min_elliptic, elliptic_ratio);
      }
      PointOutcome oc, oe;
      oc.metric = min_coercive;
      oc.n_unknowns = mesh.num_dofs();
      oe.metric = min_elliptic;
      oe.n_unknowns = mesh.num_dofs();
      rep.records.push_back(make_record("zeta", zeta, "min_coercivity_ratio" + tag, oc, p, sw.ms()));
      rep.records.push_back(make_record("zeta", zeta, "min_ellipticity_ratio" + tag, oe, p, sw.ms()));
      spdlog::info("coercivity zeta = {}, alpha0 = {}{}: min Re B ratio {:.4g}, min Re A ratio {:.4g}",
                   zeta, a0, admissible ? "" : " (inadmissible)", min_coercive, min_elliptic);
      if (admissible) {
        any_admissible = true;
        if (!(min_coercive > 0.0)) {
          coercive = false;
          coercive_detail += fmt::format(" zeta={},alpha0={}:{:.3g}", zeta, a0, min_coercive);
        }
      }
      if (zeta >= zeta_elliptic) {
        any_elliptic = true;
        if (!(min_elliptic > 0.0)) {
          elliptic = false;
          elliptic_detail += fmt::format(" zeta={},alpha0={}:{:.3g}", zeta, a0, min_elliptic);
        }
      }
      ++rep.solved_points;
      ++point;
    }
  }
  if (any_admissible)
    rep.checks.push_back({"coercivity_positive", coercive,
                          coercive ? fmt::format("{} fields per admissible grid point", cfg.fields)
                                   : "nonpositive minima:" + coercive_detail});
  if (any_elliptic)
    rep.checks.push_back({"ellipticity_positive", elliptic,
                          elliptic ? fmt::format("{} fields per grid point with zeta >= {:.4g}", cfg.fields,
                                                 zeta_elliptic)
                                   : "nonpositive minima:" + elliptic_detail});
  return rep;
}

StudyReport run_constraints_report(const SweepConfig& cfg) {
  cfg.validate();
  StudyReport rep = new_report(cfg, "constraints");
  bool pass = true;
  std::string failing;
  rep.sweep_points = cfg.alpha0_values.size();
  for (double a0 : cfg.alpha0_values) {
    const PmlProfile p = cfg.profile(cfg.d_values.front(), a0);
    const ConstraintReport r = check_pml_constraints(cfg.material, cfg.zeta, a0);
    for (const auto& e : r.entries) {
      PointOutcome o;
      o.metric = e.slack;
      rep.records.push_back(make_record("alpha0", a0, "slack:" + e.name, o, p, 0.0));
      if (!e.pass) failing += fmt::format(" alpha0={}:{}", a0, e.name);
    }
    pass = pass && r.all_pass();
    ++rep.solved_points;
  }
  PointOutcome zmin, amax;
  zmin.metric = minimal_admissible_zeta(cfg.material);
  amax.metric = alpha0_upper_bound(cfg.material);
  const PmlProfile p = cfg.profile(cfg.d_values.front(), cfg.alpha0_values.front());
  rep.records.push_back(make_record("zeta", cfg.zeta, "minimal_admissible_zeta", zmin, p, 0.0));
  rep.records.push_back(make_record("zeta", cfg.zeta, "alpha0_upper_bound", amax, p, 0.0));
  rep.checks.push_back({"constraints_pass", pass, pass ? "all conditions hold" : "failing:" + failing});
  return rep;
}

StudyReport run_study(const SweepConfig& cfg) {
  switch (cfg.study) {
    case StudyKind::kConvergence: return run_convergence_sweep(cfg);
    case StudyKind::kDecay: return run_decay_study(cfg);
    case StudyKind::kDtn: return run_dtn_error_study(cfg);
    case StudyKind::kCoercivity: return run_coercivity_study(cfg);
    case StudyKind::kConstraints: return run_constraints_report(cfg);
  }
  throw ConfigError("unknown study");
}

}  // namespace tepml
