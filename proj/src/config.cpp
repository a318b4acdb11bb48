#include "tepml/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "tepml/errors.hpp"

namespace tepml {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"material", {"rho", "lambda", "mu", "gamma", "eta", "kappa", "omega", "omega_imag"}},
      {"geometry",
       {"l", "obstacle", "d", "alpha0", "zeta", "ramp_fraction", "source", "source_column"}},
      {"discretization",
       {"h", "h_layer", "layer_growth", "h_refined", "n_per_edge", "surface_samples", "fd_step",
        "symmetry", "flux", "solver", "ordering"}},
      {"study",
       {"kind", "floor_factor", "slope_slack", "control", "min_fit_points", "rays", "ray_samples",
        "zeta_grid", "alpha0_grid", "fields", "cells"}},
      {"output", {"path", "format", "seed", "field_dump", "threads"}},
  };
  return keys;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + text + "'");
  }
  if (trim(text.substr(pos)) != "" || !std::isfinite(v))
    throw ConfigError(key + ": not a finite number: '" + text + "'");
  return v;
}

std::vector<double> to_list(const std::string& key, const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double(key, tok));
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

long to_integer(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v)) throw ConfigError(key + ": not an integer: '" + text + "'");
  return long(v);
}

Axes to_axes(const std::string& key, const std::string& text) {
  const auto v = to_list(key, text);
  if (v.size() == 1) return {v[0], v[0], v[0]};
  if (v.size() != 3) throw ConfigError(key + ": expected 1 or 3 numbers");
  return {v[0], v[1], v[2]};
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": expected a boolean: '" + text + "'");
}

template <class Enum>
Enum to_enum(const std::string& key, const std::string& text,
             const std::vector<std::pair<std::string, Enum>>& choices) {
  const std::string t = trim(text);
  for (const auto& [name, value] : choices)
    if (t == name) return value;
  std::string list;
  for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c.first;
  throw ConfigError(key + ": '" + t + "' is not one of " + list);
}

template <class Enum>
std::string enum_name(Enum value, const std::vector<std::pair<std::string, Enum>>& choices) {
  for (const auto& [name, v] : choices)
    if (v == value) return name;
  return "?";
}

const std::vector<std::pair<std::string, Symmetry>> kSymmetries{{"none", Symmetry::kNone},
                                                                {"octant", Symmetry::kOctant}};
const std::vector<std::pair<std::string, FluxRecovery>> kFluxes{
    {"variational", FluxRecovery::kVariational}, {"recovered", FluxRecovery::kRecoveredGradient}};
const std::vector<std::pair<std::string, SolverKind>> kSolvers{
    {"auto", SolverKind::kAuto}, {"lu", SolverKind::kLU}, {"symmetric", SolverKind::kSymmetric}};
const std::vector<std::pair<std::string, FillOrdering>> kOrderings{{"metis", FillOrdering::kMetis},
                                                                   {"amd", FillOrdering::kAmd}};
const std::vector<std::pair<std::string, ReportFormat>> kFormats{{"csv", ReportFormat::kCsv},
                                                                 {"json", ReportFormat::kJson}};
const std::vector<std::pair<std::string, StudyKind>> kStudies{
    {"converge", StudyKind::kConvergence},
    {"decay", StudyKind::kDecay},
    {"dtn", StudyKind::kDtn},
    {"coercivity", StudyKind::kCoercivity},
    {"constraints", StudyKind::kConstraints}};

void apply(SweepConfig& c, const std::string& section, const std::string& key,
           const std::string& raw) {
  const std::string k = section + "." + key;
  const std::string v = trim(raw);
  if (section == "material") {
    if (key == "rho") c.material.rho = to_double(k, v);
    else if (key == "lambda") c.material.lame_lambda = to_double(k, v);
    else if (key == "mu") c.material.lame_mu = to_double(k, v);
    else if (key == "gamma") c.material.gamma = to_double(k, v);
    else if (key == "eta") c.material.eta = to_double(k, v);
    else if (key == "kappa") c.material.kappa = to_double(k, v);
    else if (key == "omega") c.material.omega.real(to_double(k, v));
    else if (key == "omega_imag") c.material.omega.imag(to_double(k, v));
  } else if (section == "geometry") {
    if (key == "l") c.l = to_axes(k, v);
    else if (key == "obstacle") c.obstacle = to_axes(k, v);
    else if (key == "d") c.d_values = to_list(k, v);
    else if (key == "alpha0") c.alpha0_values = to_list(k, v);
    else if (key == "zeta") c.zeta = to_double(k, v);
    else if (key == "ramp_fraction") c.ramp_fraction = to_double(k, v);
    else if (key == "source") {
      const Axes s = to_axes(k, v);
      c.source = Vec3(s[0], s[1], s[2]);
    } else if (key == "source_column") c.source_column = int(to_integer(k, v));
  } else if (section == "discretization") {
    if (key == "h") c.h = to_double(k, v);
    else if (key == "h_layer") c.h_layer = to_double(k, v);
    else if (key == "layer_growth") c.layer_growth = to_double(k, v);
    else if (key == "h_refined") c.h_refined = to_double(k, v);
    else if (key == "n_per_edge") c.n_per_edge = int(to_integer(k, v));
    else if (key == "surface_samples") c.surface_samples = int(to_integer(k, v));
    else if (key == "fd_step") c.fd_step = to_double(k, v);
    else if (key == "symmetry") c.symmetry = to_enum(k, v, kSymmetries);
    else if (key == "flux") c.flux = to_enum(k, v, kFluxes);
    else if (key == "solver") c.solver = to_enum(k, v, kSolvers);
    else if (key == "ordering") c.ordering = to_enum(k, v, kOrderings);
  } else if (section == "study") {
    if (key == "kind") c.study = to_enum(k, v, kStudies);
    else if (key == "floor_factor") c.floor_factor = to_double(k, v);
    else if (key == "slope_slack") c.slope_slack = to_double(k, v);
    else if (key == "control") c.control = to_bool(k, v);
    else if (key == "min_fit_points") c.min_fit_points = int(to_integer(k, v));
    else if (key == "rays") c.rays = int(to_integer(k, v));
    else if (key == "ray_samples") c.ray_samples = int(to_integer(k, v));
    else if (key == "zeta_grid") c.zeta_grid = to_list(k, v);
    else if (key == "alpha0_grid") c.alpha0_grid = to_list(k, v);
    else if (key == "fields") c.fields = int(to_integer(k, v));
    else if (key == "cells") c.cells = int(to_integer(k, v));
  } else if (section == "output") {
    if (key == "path") c.output_path = v;
    else if (key == "format") c.format = to_enum(k, v, kFormats);
    else if (key == "seed") {
      if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError(k + ": expected an unsigned integer");
      try {
        c.seed = std::stoull(v);
      } catch (const std::exception&) {
        throw ConfigError(k + ": out of range");
      }
    } else if (key == "field_dump") c.field_dump = v;
    else if (key == "threads") c.threads = int(to_integer(k, v));
  }
}

}  // namespace

StudyKind study_from_name(const std::string& name) { return to_enum("study", name, kStudies); }

std::string study_name(StudyKind kind) { return enum_name(kind, kStudies); }

std::string SweepConfig::sweep_axis() const {
  return alpha0_values.size() > 1 ? "alpha0" : "d";
}

std::vector<double> SweepConfig::sweep_values() const {
  std::vector<double> v = sweep_axis() == "d" ? d_values : alpha0_values;
  std::sort(v.begin(), v.end());
  return v;
}

PmlProfile SweepConfig::profile(double d, double alpha0) const {
  return PmlProfile::with_ramp_fraction(l, {d, d, d}, alpha0, zeta, ramp_fraction);
}

PmlProfile SweepConfig::profile_at(double value) const {
  return sweep_axis() == "d" ? profile(value, alpha0_values.front())
                             : profile(d_values.front(), value);
}

void SweepConfig::validate() const {
  if (d_values.size() > 1 && alpha0_values.size() > 1)
    throw ConfigError("exactly one sweep axis may be active: d and alpha0 both list several values");
  try {
    material.validate();
    for (double d : d_values)
      for (double a : alpha0_values) (void)profile(d, a);
  } catch (const Error& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  for (int j = 0; j < 3; ++j)
    if (!(obstacle[j] > 0.0 && obstacle[j] < l[j]))
      throw ConfigError("geometry.obstacle must lie strictly inside B1");
  if (!(ramp_fraction > 0.0 && ramp_fraction <= 0.5))
    throw ConfigError("geometry.ramp_fraction must lie in (0, 0.5]");
  if (source_column < 0 || source_column > 3) throw ConfigError("geometry.source_column must be 0..3");
  for (int j = 0; j < 3; ++j)
    if (std::abs(source[j]) >= obstacle[j]) throw ConfigError("geometry.source must lie inside the obstacle");
  if (symmetry == Symmetry::kOctant && source.norm() != 0.0)
    throw ConfigError("octant symmetry needs the source at the origin");
  if (!(h > 0.0)) throw ConfigError("discretization.h must be positive");
  if (h_layer < 0.0) throw ConfigError("discretization.h_layer must be nonnegative");
  if (layer_growth < 1.0) throw ConfigError("discretization.layer_growth must be at least 1");
  if (h_refined < 0.0 || (h_refined > 0.0 && h_refined >= h))
    throw ConfigError("discretization.h_refined must be 0 (off) or smaller than h");
  if (n_per_edge < 2) throw ConfigError("discretization.n_per_edge must be at least 2");
  if (surface_samples < 1) throw ConfigError("discretization.surface_samples must be positive");
  if (!(fd_step > 0.0)) throw ConfigError("discretization.fd_step must be positive");
  if (!(floor_factor >= 1.0)) throw ConfigError("study.floor_factor must be at least 1");
  if (!(slope_slack > 0.0 && slope_slack <= 1.0)) throw ConfigError("study.slope_slack must lie in (0, 1]");
  if (min_fit_points < 2) throw ConfigError("study.min_fit_points must be at least 2");
  if (rays < 1 || ray_samples < 2) throw ConfigError("study.rays and study.ray_samples too small");
  if (fields < 1 || cells < 2) throw ConfigError("study.fields and study.cells too small");
  for (double z : zeta_grid)
    if (z < 1.0) throw ConfigError("study.zeta_grid entries must be at least 1");
  for (double a : alpha0_grid)
    if (a < 0.0) throw ConfigError("study.alpha0_grid entries must be nonnegative");
  if (threads < 1) throw ConfigError("output.threads must be positive");
}

SweepConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  SweepConfig c;
  const auto& keys = known_keys();
  for (const auto& [section, body] : tree) {
    const auto it = keys.find(section);
    if (it == keys.end() || !body.data().empty())
      throw ConfigError("unknown config section or top-level key: '" + section + "'");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("unknown config key: '" + section + "." + key + "'");
      apply(c, section, key, value.data());
    }
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in);
}

nlohmann::json config_to_json(const SweepConfig& c) {
  using nlohmann::json;
  const auto axes = [](const Axes& a) { return json::array({a[0], a[1], a[2]}); };
  json j;
  j["material"] = {{"rho", c.material.rho},
                   {"lambda", c.material.lame_lambda},
                   {"mu", c.material.lame_mu},
                   {"gamma", c.material.gamma},
                   {"eta", c.material.eta},
                   {"kappa", c.material.kappa},
                   {"omega", c.material.omega.real()},
                   {"omega_imag", c.material.omega.imag()}};
  j["geometry"] = {{"l", axes(c.l)},
                   {"obstacle", axes(c.obstacle)},
                   {"d", c.d_values},
                   {"alpha0", c.alpha0_values},
                   {"zeta", c.zeta},
                   {"ramp_fraction", c.ramp_fraction},
                   {"source", json::array({c.source[0], c.source[1], c.source[2]})},
                   {"source_column", c.source_column}};
  j["discretization"] = {{"h", c.h},
                         {"h_layer", c.h_layer},
                         {"layer_growth", c.layer_growth},
                         {"h_refined", c.h_refined},
                         {"n_per_edge", c.n_per_edge},
                         {"surface_samples", c.surface_samples},
                         {"fd_step", c.fd_step},
                         {"symmetry", enum_name(c.symmetry, kSymmetries)},
                         {"flux", enum_name(c.flux, kFluxes)},
                         {"solver", enum_name(c.solver, kSolvers)},
                         {"ordering", enum_name(c.ordering, kOrderings)}};
  j["study"] = {{"kind", study_name(c.study)},
                {"floor_factor", c.floor_factor},
                {"slope_slack", c.slope_slack},
                {"control", c.control},
                {"min_fit_points", c.min_fit_points},
                {"rays", c.rays},
                {"ray_samples", c.ray_samples},
                {"zeta_grid", c.zeta_grid},
                {"alpha0_grid", c.alpha0_grid},
                {"fields", c.fields},
                {"cells", c.cells}};
  j["output"] = {{"format", enum_name(c.format, kFormats)},
                 {"seed", c.seed},
                 {"field_dump", c.field_dump}};
  return j;
}

}  // namespace tepml
