// magcas — Casimir force between magnetoplasma slabs in the Voigt
// configuration. Subcommands:
//   epsilon   imaginary-axis dielectric components over a zeta grid
//   force     normalized Casimir pressure over an (omega_c, L) grid
//   point     one force evaluation with full diagnostics (JSON)
//   validate  built-in oracle cross-checks
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 partial
// computational failure.

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "magcas/lifshitz.hpp"
#include "magcas/material.hpp"
#include "magcas/reflection.hpp"
#include "magcas/validate.hpp"
#include <json.hpp>

namespace {

using ordered_json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

std::string fmt(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number in list: '" + item + "'");
    }
  }
  return out;
}

double parse_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != trim(s).size() && used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
}

long parse_long(const std::string& s) {
  try {
    return std::stol(s);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
}

bool parse_bool(const std::string& s) {
  const std::string v = trim(s);
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw UsageError("not a boolean: '" + s + "'");
}

// All tunables of one subcommand, with per-command defaults filled in
// before parsing.
struct Options {
  double eps_l = 15.4;
  std::string omega_c = "0.2";
  double gamma = 0.0;
  double zeta_min = 0.02;
  double zeta_max = 3.0;
  long zeta_points = 200;
  double l_min = 0.1;
  double l_max = 2.0;
  long l_points = 50;
  double separation = 1.0;  // point only
  double theta = 0.0;
  bool zero_t = false;
  double thickness = 0.0;  // 0 = half-space
  std::string output;
  std::string format = "csv";
  std::string config_path;
  double tolerance = 0.0;       // validate only
  std::string fault = "none";   // validate only (test hook)
};

// One config-file binding: applies a string value to the target unless the
// option was already given on the command line.
struct Binding {
  CLI::Option* opt;
  std::function<void(const std::string&)> apply;
};

using Bindings = std::map<std::string, Binding>;

const std::vector<std::string> kKnownKeys = {
    "eps-l", "omega-c", "gamma",  "zeta-min", "zeta-max",  "zeta-points", "l-min",
    "l-max", "l-points", "l",     "theta",    "zero-t",    "thickness",   "output",
    "format", "tolerance", "fault"};

void apply_config_file(const std::string& path, Bindings& bindings) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) + " is not 'key = value'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
      throw UsageError("unknown config key '" + key + "' (line " + std::to_string(lineno) + ")");
    const auto it = bindings.find(key);
    if (it == bindings.end()) continue;  // valid key, not used by this command
    if (it->second.opt->count() > 0) continue;  // command line wins
    it->second.apply(value);
  }
}

// Registers the options shared by the computational subcommands and
// returns the config-file bindings.
Bindings add_material_options(CLI::App* cmd, Options& o) {
  Bindings b;
  b["eps-l"] = {cmd->add_option("--eps-l", o.eps_l, "Background permittivity (>= 1)"),
                [&o](const std::string& v) { o.eps_l = parse_double(v); }};
  b["omega-c"] = {cmd->add_option("--omega-c", o.omega_c,
                                  "Cyclotron/plasma frequency ratio(s), comma separated"),
                  [&o](const std::string& v) { o.omega_c = v; }};
  b["gamma"] = {cmd->add_option("--gamma", o.gamma, "Damping/plasma frequency ratio (>= 0)"),
                [&o](const std::string& v) { o.gamma = parse_double(v); }};
  b["output"] = {cmd->add_option("--output", o.output, "Output file (default: stdout)"),
                 [&o](const std::string& v) { o.output = v; }};
  cmd->add_option("--config", o.config_path, "Config file with 'key = value' lines");
  return b;
}

void add_thermal_geometry_options(CLI::App* cmd, Options& o, Bindings& b) {
  b["theta"] = {cmd->add_option("--theta", o.theta,
                                "Dimensionless temperature 2 pi k_B T / (hbar omega_p)"),
                [&o](const std::string& v) { o.theta = parse_double(v); }};
  b["zero-t"] = {cmd->add_flag("--zero-t", o.zero_t, "Zero-temperature integral (default)"),
                 [&o](const std::string& v) { o.zero_t = parse_bool(v); }};
  b["thickness"] = {
      cmd->add_option("--thickness", o.thickness, "Slab thickness in c/omega_p (default: half-space)"),
      [&o](const std::string& v) { o.thickness = parse_double(v); }};
}

std::vector<double> linspace(double lo, double hi, long n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (long i = 0; i < n; ++i)
    out.push_back(i == n - 1 ? hi : lo + (hi - lo) * static_cast<double>(i) /
                                             static_cast<double>(n - 1));
  return out;
}

std::vector<double> logspace(double lo, double hi, long n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  const double ratio = hi / lo;
  for (long i = 0; i < n; ++i)
    out.push_back(i == n - 1 ? hi
                             : lo * std::pow(ratio, static_cast<double>(i) /
                                                        static_cast<double>(n - 1)));
  return out;
}

void validate_range(const std::string& name, double lo, double hi, long points,
                    bool allow_single) {
  if (points < 1 || (points == 1 && !allow_single))
    throw UsageError(name + "-points must be >= 2");
  if (points == 1) {
    if (lo != hi) throw UsageError(name + "-points 1 requires " + name + "-min == " + name + "-max");
    return;
  }
  if (!(lo < hi)) throw UsageError(name + "-min must be < " + name + "-max");
}

magcas::Material make_material(const Options& o, double omega_c) {
  try {
    return magcas::Material(o.eps_l, omega_c, o.gamma);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

magcas::ThermalState make_thermal(const Options& o) {
  if (o.zero_t && o.theta > 0.0)
    throw UsageError("--theta and --zero-t are mutually exclusive");
  if (o.theta < 0.0) throw UsageError("theta must be >= 0");
  return o.theta > 0.0 ? magcas::ThermalState::finite(o.theta) : magcas::ThermalState::zero();
}

magcas::SlabGeometry make_geometry(const Options& o) {
  if (o.thickness == 0.0) return magcas::SlabGeometry::half_space();
  if (!(o.thickness > 0.0)) throw UsageError("thickness must be > 0");
  return magcas::SlabGeometry::slab(o.thickness);
}

// Writes text to the output target; also drops the effective-config
// sidecar next to file outputs.
void emit(const Options& o, const std::string& text, const ordered_json& effective) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + o.output);
  out << text;
  std::ofstream side(o.output + ".config.json", std::ios::binary);
  side << effective.dump(2) << '\n';
}

ordered_json base_config(const std::string& command, const Options& o,
                         const std::vector<double>& omega_c) {
  ordered_json j;
  j["command"] = command;
  j["eps-l"] = o.eps_l;
  j["omega-c"] = omega_c;
  j["gamma"] = o.gamma;
  return j;
}

int run_epsilon(const Options& o) {
  const std::vector<double> omegas = parse_double_list(o.omega_c);
  if (omegas.size() != 1)
    throw UsageError("epsilon expects a single --omega-c value");
  validate_range("zeta", o.zeta_min, o.zeta_max, o.zeta_points, false);
  if (!(o.zeta_min > 0.0)) throw UsageError("zeta-min must be > 0");
  if (o.format != "csv" && o.format != "json") throw UsageError("format must be csv or json");

  const magcas::Material m = make_material(o, omegas[0]);
  const std::vector<double> grid = logspace(o.zeta_min, o.zeta_max, o.zeta_points);

  std::string text;
  if (o.format == "csv") {
    text = "zeta,eps_xx,eps_yy,eps_yz\n";
    for (double zeta : grid) {
      const magcas::VoigtPermittivity e = magcas::imaginary_axis_components(zeta, m);
      text += fmt(zeta) + ',' + fmt(e.eps_xx.real()) + ',' + fmt(e.eps_yy.real()) + ',' +
              fmt(e.eps_yz.real()) + '\n';
    }
  } else {
    ordered_json rows = ordered_json::array();
    for (double zeta : grid) {
      const magcas::VoigtPermittivity e = magcas::imaginary_axis_components(zeta, m);
      rows.push_back({{"zeta", zeta},
                      {"eps_xx", e.eps_xx.real()},
                      {"eps_yy", e.eps_yy.real()},
                      {"eps_yz", e.eps_yz.real()}});
    }
    text = rows.dump(2) + '\n';
  }

  ordered_json eff = base_config("epsilon", o, omegas);
  eff["zeta-min"] = o.zeta_min;
  eff["zeta-max"] = o.zeta_max;
  eff["zeta-points"] = o.zeta_points;
  eff["format"] = o.format;
  emit(o, text, eff);
  return 0;
}

int run_force(const Options& o) {
  const std::vector<double> omegas = parse_double_list(o.omega_c);
  if (omegas.empty()) throw UsageError("omega-c list must be nonempty");
  for (double w : omegas)
    if (!(w >= 0.0)) throw UsageError("omega-c values must be >= 0");
  validate_range("l", o.l_min, o.l_max, o.l_points, true);
  if (!(o.l_min > 0.0)) throw UsageError("l-min must be > 0 (separation is a length)");
  if (o.format != "csv" && o.format != "json") throw UsageError("format must be csv or json");

  magcas::SweepSpec spec{linspace(o.l_min, o.l_max, o.l_points), omegas, make_material(o, 0.0),
                         make_thermal(o), make_geometry(o)};
  const std::vector<magcas::SweepRow> rows = magcas::force_sweep(spec);

  bool any_failed = false;
  for (const auto& row : rows) any_failed = any_failed || !row.ok;

  std::string text;
  if (o.format == "csv") {
    text = any_failed ? "omega_c,L,ratio,pressure,terms,err_estimate,error\n"
                      : "omega_c,L,ratio,pressure,terms,err_estimate\n";
    for (const auto& row : rows) {
      if (row.ok) {
        text += fmt(row.omega_c) + ',' + fmt(row.separation) + ',' + fmt(row.result.ratio) +
                ',' + fmt(row.result.pressure) + ',' +
                std::to_string(row.result.matsubara_terms_used) + ',' +
                fmt(row.result.quadrature_error_estimate);
        if (any_failed) text += ',';
      } else {
        std::string sanitized = row.error;
        for (char& c : sanitized)
          if (c == ',' || c == '\n') c = ';';
        text += fmt(row.omega_c) + ',' + fmt(row.separation) + ",,,,," + sanitized;
      }
      text += '\n';
    }
  } else {
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j{{"omega_c", row.omega_c}, {"L", row.separation}};
      if (row.ok) {
        j["ratio"] = row.result.ratio;
        j["pressure"] = row.result.pressure;
        j["terms"] = row.result.matsubara_terms_used;
        j["err_estimate"] = row.result.quadrature_error_estimate;
      } else {
        j["error"] = row.error;
      }
      jrows.push_back(std::move(j));
    }
    text = jrows.dump(2) + '\n';
  }

  ordered_json eff = base_config("force", o, omegas);
  eff["l-min"] = o.l_min;
  eff["l-max"] = o.l_max;
  eff["l-points"] = o.l_points;
  eff["theta"] = o.theta;
  eff["zero-t"] = o.theta <= 0.0;
  if (o.thickness > 0.0) eff["thickness"] = o.thickness;
  eff["format"] = o.format;
  emit(o, text, eff);
  return any_failed ? 3 : 0;
}

int run_point(const Options& o) {
  const std::vector<double> omegas = parse_double_list(o.omega_c);
  if (omegas.size() != 1) throw UsageError("point expects a single --omega-c value");
  if (!(o.separation > 0.0)) throw UsageError("--l must be > 0");

  const magcas::Material m = make_material(o, omegas[0]);
  const magcas::ThermalState thermal = make_thermal(o);
  const magcas::SlabGeometry geom = make_geometry(o);
  const magcas::ForceResult f = magcas::pressure(o.separation, m, thermal, geom);

  ordered_json doc;
  doc["omega_c"] = omegas[0];
  doc["L"] = o.separation;
  doc["ratio"] = f.ratio;
  doc["pressure"] = f.pressure;
  doc["ideal_pressure"] = f.ideal_pressure;
  doc["terms"] = f.matsubara_terms_used;
  doc["err_estimate"] = f.quadrature_error_estimate;
  doc["thermal"] = {{"zero_temperature", thermal.zero_temperature}, {"theta", thermal.theta}};
  doc["geometry"] = geom.is_half_space() ? ordered_json{{"half_space", true}}
                                         : ordered_json{{"thickness", geom.thickness}};

  ordered_json probes = ordered_json::array();
  for (const auto& [zeta, kappa] :
       std::vector<std::pair<double, double>>{{0.1, 0.5}, {0.5, 1.0}, {1.0, 2.0}}) {
    const magcas::VoigtPermittivity eps = magcas::imaginary_axis_components(zeta, m);
    const double q_z = std::sqrt(kappa * kappa - zeta * zeta);
    const magcas::Kinematics kin = magcas::kinematics(zeta, q_z, eps);
    const magcas::ReflectionPair r = magcas::reflection_pair(kin, eps, geom);
    probes.push_back({{"zeta", zeta},
                      {"kappa", kappa},
                      {"q_z", q_z},
                      {"r_s", r.r_s.real()},
                      {"r_p_re", r.r_p.real()},
                      {"r_p_im", r.r_p.imag()},
                      {"R_s", std::norm(r.r_s)},
                      {"R_p", std::norm(r.r_p)}});
  }
  doc["reflectance_probes"] = std::move(probes);

  ordered_json eff = base_config("point", o, omegas);
  eff["l"] = o.separation;
  eff["theta"] = o.theta;
  eff["zero-t"] = o.theta <= 0.0;
  if (o.thickness > 0.0) eff["thickness"] = o.thickness;
  emit(o, doc.dump(2) + '\n', eff);
  return 0;
}

int run_validate(const Options& o) {
  magcas::ValidateConfig cfg;
  if (o.tolerance < 0.0) throw UsageError("tolerance must be >= 0");
  cfg.tolerance = o.tolerance;
  if (o.fault == "eps-v-sign")
    cfg.fault = magcas::FaultInjection::eps_v_sign;
  else if (o.fault != "none")
    throw UsageError("unknown fault '" + o.fault + "' (use none or eps-v-sign)");

  const std::vector<magcas::CheckResult> results = magcas::run_validation(cfg);
  for (const auto& r : results) {
    std::printf("[%s] %-26s max_dev=%.3e tol=%.1e%s%s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.max_deviation, r.tolerance, r.detail.empty() ? "" : "  ",
                r.detail.c_str());
  }
  if (!magcas::all_passed(results)) {
    for (const auto& r : results)
      if (!r.passed) std::printf("validation failed: %s\n", r.name.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir force between magnetoplasma slabs (Voigt configuration)"};
  app.require_subcommand(1);

  Options eps_opts, force_opts, point_opts, validate_opts;
  force_opts.omega_c = "0,0.2,0.5,1";

  CLI::App* eps_cmd =
      app.add_subcommand("epsilon", "Imaginary-axis dielectric components over a zeta grid");
  Bindings eps_b = add_material_options(eps_cmd, eps_opts);
  eps_b["zeta-min"] = {eps_cmd->add_option("--zeta-min", eps_opts.zeta_min, "Grid start (> 0)"),
                       [&](const std::string& v) { eps_opts.zeta_min = parse_double(v); }};
  eps_b["zeta-max"] = {eps_cmd->add_option("--zeta-max", eps_opts.zeta_max, "Grid end"),
                       [&](const std::string& v) { eps_opts.zeta_max = parse_double(v); }};
  eps_b["zeta-points"] = {eps_cmd->add_option("--zeta-points", eps_opts.zeta_points, "Grid size"),
                          [&](const std::string& v) { eps_opts.zeta_points = parse_long(v); }};
  eps_b["format"] = {eps_cmd->add_option("--format", eps_opts.format, "csv or json"),
                     [&](const std::string& v) { eps_opts.format = v; }};

  CLI::App* force_cmd =
      app.add_subcommand("force", "Normalized Casimir pressure over an (omega_c, L) grid");
  Bindings force_b = add_material_options(force_cmd, force_opts);
  force_b["l-min"] = {force_cmd->add_option("--l-min", force_opts.l_min, "Separation grid start"),
                      [&](const std::string& v) { force_opts.l_min = parse_double(v); }};
  force_b["l-max"] = {force_cmd->add_option("--l-max", force_opts.l_max, "Separation grid end"),
                      [&](const std::string& v) { force_opts.l_max = parse_double(v); }};
  force_b["l-points"] = {force_cmd->add_option("--l-points", force_opts.l_points, "Grid size"),
                         [&](const std::string& v) { force_opts.l_points = parse_long(v); }};
  force_b["format"] = {force_cmd->add_option("--format", force_opts.format, "csv or json"),
                       [&](const std::string& v) { force_opts.format = v; }};
  add_thermal_geometry_options(force_cmd, force_opts, force_b);

  CLI::App* point_cmd =
      app.add_subcommand("point", "One force evaluation with diagnostics (JSON)");
  Bindings point_b = add_material_options(point_cmd, point_opts);
  point_b["l"] = {point_cmd->add_option("--l", point_opts.separation, "Separation in c/omega_p"),
                  [&](const std::string& v) { point_opts.separation = parse_double(v); }};
  add_thermal_geometry_options(point_cmd, point_opts, point_b);

  CLI::App* validate_cmd = app.add_subcommand("validate", "Run the built-in oracle cross-checks");
  Bindings validate_b;
  validate_b["tolerance"] = {
      validate_cmd->add_option("--tolerance", validate_opts.tolerance,
                               "Override every check tolerance (0 keeps the defaults)"),
      [&](const std::string& v) { validate_opts.tolerance = parse_double(v); }};
  validate_b["fault"] = {validate_cmd
                             ->add_option("--fault", validate_opts.fault,
                                          "Test hook: none or eps-v-sign")
                             ->group(""),
                         [&](const std::string& v) { validate_opts.fault = v; }};
  validate_cmd->add_option("--config", validate_opts.config_path,
                           "Config file with 'key = value' lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (eps_cmd->parsed()) {
      if (!eps_opts.config_path.empty()) apply_config_file(eps_opts.config_path, eps_b);
      return run_epsilon(eps_opts);
    }
    if (force_cmd->parsed()) {
      if (!force_opts.config_path.empty()) apply_config_file(force_opts.config_path, force_b);
      return run_force(force_opts);
    }
    if (point_cmd->parsed()) {
      if (!point_opts.config_path.empty()) apply_config_file(point_opts.config_path, point_b);
      return run_point(point_opts);
    }
    if (validate_cmd->parsed()) {
      if (!validate_opts.config_path.empty())
        apply_config_file(validate_opts.config_path, validate_b);
      return run_validate(validate_opts);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
