#include "cli.hpp"

#include "CLI11.hpp"
#include "floquet/field_models.hpp"
#include "floquet/planar_charge.hpp"
#include "floquet/spin_resonance.hpp"
#include "floquet/zone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace floquet::cli {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------- output

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return json(v).dump();  // shortest round-trip representation
}

std::string csv_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double v) const {
      if (std::isfinite(v)) return v;
      return format_number(v);
    }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

// ---------------------------------------------------------------- schemas

double require_number(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.contains(key)) throw ConfigError(path + "." + key + ": missing required field");
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path + "." + key + ": must be finite");
  return x;
}

std::optional<double> optional_number(const json& doc, const std::string& key, const std::string& path) {
  if (!doc.contains(key)) return std::nullopt;
  return require_number(doc, key, path);
}

void reject_unknown(const json& doc, const std::vector<std::string>& allowed, const std::string& path) {
  for (const auto& item : doc.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(path + "." + item.key() + ": unknown field");
    }
  }
}

struct ProfileSpec {
  std::string kind;
  std::optional<double> beta0;
  double beta1 = 0.0;
  double omega = kTwoPi;
  double period = 1.0;
  std::vector<hill::DriveStep> steps;
};

ProfileSpec read_profile_spec(const json& doc) {
  const std::string path = "profile";
  if (!doc.is_object()) throw ConfigError("profile: expected a JSON object");
  if (!doc.contains("kind")) throw ConfigError("profile.kind: missing required field");
  if (!doc.at("kind").is_string()) throw ConfigError("profile.kind: expected a string");
  ProfileSpec spec;
  spec.kind = doc.at("kind").get<std::string>();
  spec.beta0 = optional_number(doc, "beta0", path);
  if (spec.kind == "constant") {
    reject_unknown(doc, {"kind", "beta0", "period"}, path);
    spec.period = optional_number(doc, "period", path).value_or(1.0);
    if (!(spec.period > 0.0)) throw ConfigError("profile.period: must be positive");
  } else if (spec.kind == "sin" || spec.kind == "offset_sin") {
    if (spec.kind == "sin") {
      reject_unknown(doc, {"kind", "beta0", "omega"}, path);
    } else {
      reject_unknown(doc, {"kind", "beta0", "beta1", "omega"}, path);
      spec.beta1 = require_number(doc, "beta1", path);
    }
    spec.omega = optional_number(doc, "omega", path).value_or(kTwoPi);
    if (!(spec.omega > 0.0)) throw ConfigError("profile.omega: must be positive");
  } else if (spec.kind == "steps") {
    reject_unknown(doc, {"kind", "beta0", "steps"}, path);
    if (!doc.contains("steps")) throw ConfigError("profile.steps: missing required field");
    const json& steps = doc.at("steps");
    if (!steps.is_array() || steps.empty()) throw ConfigError("profile.steps: expected a non-empty array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const std::string where = "profile.steps[" + std::to_string(i) + "]";
      const json& s = steps[i];
      if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
        throw ConfigError(where + ": expected [beta, tau]");
      }
      const double beta = s[0].get<double>();
      const double tau = s[1].get<double>();
      if (!std::isfinite(beta)) throw ConfigError(where + ": beta must be finite");
      if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError(where + ": tau must be positive");
      spec.steps.push_back({beta, tau});
    }
  } else {
    throw ConfigError("profile.kind: expected one of constant, steps, sin, offset_sin (got \"" + spec.kind + "\")");
  }
  return spec;
}

hill::DriveProfile build_profile(const ProfileSpec& spec, std::optional<double> beta0) {
  try {
    if (spec.kind == "steps") {
      if (!beta0) return hill::DriveProfile::steps(spec.steps);
      double peak = 0.0;
      for (const auto& s : spec.steps) peak = std::max(peak, std::abs(s.beta));
      if (peak == 0.0) throw ConfigError("profile.steps: all beta are zero, cannot rescale to beta0");
      std::vector<hill::DriveStep> scaled = spec.steps;
      for (auto& s : scaled) s.beta *= *beta0 / peak;
      return hill::DriveProfile::steps(scaled);
    }
    if (!beta0) throw ConfigError("profile.beta0: missing required field");
    if (spec.kind == "constant") return hill::DriveProfile::constant(*beta0, spec.period);
    if (spec.kind == "sin") return hill::DriveProfile::sinusoid(*beta0, spec.omega);
    return hill::DriveProfile::offset_sinusoid(*beta0, spec.beta1, spec.omega);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("profile: ") + e.what());
  }
}

quantum::CMatrix read_real_matrix(const json& rows, const std::string& where) {
  if (!rows.is_array() || rows.empty()) throw ConfigError(where + ": expected a non-empty square array");
  const auto n = static_cast<Eigen::Index>(rows.size());
  quantum::CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw ConfigError(where + "[" + std::to_string(i) + "]: expected " + std::to_string(n) + " entries");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) {
        throw ConfigError(where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]: expected a number");
      }
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

// ---------------------------------------------------------------- grids

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid.push_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
  }
  return grid;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid;
  for (double e : linear_grid(std::log10(lo), std::log10(hi), points)) grid.push_back(std::pow(10.0, e));
  return grid;
}

void check_points(int points, const std::string& flag) {
  if (points < 1) throw ConfigError(flag + ": must be at least 1");
}

void check_range(double lo, double hi, const std::string& lo_flag, const std::string& hi_flag) {
  if (!(lo <= hi)) throw ConfigError(lo_flag + ": must not exceed " + hi_flag);
}

void check_positive(double v, const std::string& flag) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(flag + ": must be positive");
}

// ---------------------------------------------------------------- commands

struct Common {
  std::string format = "csv";
  std::string out;
  int steps = 0;
  CLI::Option* steps_option = nullptr;

  [[nodiscard]] std::optional<int> steps_flag() const {
    if (steps_option != nullptr && steps_option->count() > 0) return steps;
    return std::nullopt;
  }
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", common.out, "Output file (default: stdout)");
  common.steps_option = sub->add_option("--steps", common.steps, "Integration steps per period");
}

struct OscSpectrum {
  std::string profile;
  double beta0_min = 0.0;
  double beta0_max = 8.0;
  int points = 400;

  Table run(const Common& common) const {
    check_points(points, "--points");
    check_range(beta0_min, beta0_max, "--beta0-min", "--beta0-max");
    const auto family = parse_family(load_json(profile, "--profile"));
    const int steps = resolve_steps(common.steps_flag(), hill::kDefaultStepsPerPeriod);
    Table t{{"beta0", "trace", "stability", "omega_F"}, {}};
    for (const auto& row : hill::omega_F_scan(family, linear_grid(beta0_min, beta0_max, points), steps)) {
      t.rows.push_back({row.beta0, row.trace, hill::to_string(row.stability), optional_cell(row.omega_F)});
    }
    return t;
  }
};

struct OscLoopFind {
  std::string profile;
  int k = 1;
  int n = 4;
  double lo = 0.0;
  double hi = 0.0;

  Table run(const Common& common) const {
    if (n < 1) throw ConfigError("--n: must be at least 1");
    check_range(lo, hi, "--lo", "--hi");
    const auto family = parse_family(load_json(profile, "--profile"));
    const int steps = resolve_steps(common.steps_flag(), hill::kDefaultStepsPerPeriod);
    const auto root = hill::find_loop_beta(family, k, n, {lo, hi}, steps);
    if (!root) throw NumericalFailure("osc-loop-find: no root in bracket [" + format_number(lo) + ", " + format_number(hi) + "]");
    return {{"beta0", "trace", "loop_deviation"}, {{root->beta0, root->trace, root->loop_deviation}}};
  }
};

struct OscTrajectory {
  std::string profile;
  double q0 = 1.0;
  double p0 = 0.0;
  double periods = 4.0;
  int samples = 256;

  Table run(const Common&) const {
    check_points(samples, "--samples");
    check_positive(periods, "--periods");
    const auto drive = parse_profile(load_json(profile, "--profile"));
    Table t{{"t", "q", "p"}, {}};
    for (const auto& s : hill::classical_trajectory(drive, q0, p0, periods * drive.period(), samples)) {
      t.rows.push_back({s.t, s.q, s.p});
    }
    return t;
  }
};

struct PlanarLoop {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double omega = kTwoPi;
  int periods = 1;
  double tol = 1e-2;
  bool polish = false;
  double polish_tol = 1e-6;

  Table run(const Common& common) const {
    check_positive(omega, "--omega");
    if (periods < 1) throw ConfigError("--periods: must be at least 1");
    check_positive(tol, "--tol");
    const int steps = resolve_steps(common.steps_flag(), planar::kDefaultStepsPerPeriod);
    const auto drive = hill::DriveProfile::offset_sinusoid(beta0, beta1, omega);
    const auto check = planar::planar_loop_check(drive, periods, tol, steps);
    const double theta = drive.period_integral() * periods;
    Table t{{"deviation", "is_loop", "theta", "theta_mod_2pi"},
            {{check.deviation, check.is_loop, theta, reduce_to_zone(theta, kTwoPi)}}};
    if (polish) {
      const auto polished = planar::polish_loop_beta1(beta0, beta1, omega, periods, polish_tol, 0.05, steps);
      if (!polished) throw NumericalFailure("planar-loop: no beta1 root within 0.05 of --beta1");
      for (const char* c : {"beta1_polished", "winding", "deviation_polished", "is_loop_polished"}) {
        t.columns.emplace_back(c);
      }
      t.rows[0].insert(t.rows[0].end(), {polished->beta1, static_cast<long long>(polished->winding),
                                         polished->check.deviation, polished->check.is_loop});
    }
    return t;
  }
};

struct StabilityScan {
  double omega = kTwoPi;
  double alpha_min = 0.0;
  double alpha_max = 1.0;
  int points = 101;
  bool threshold = false;
  double bracket_lo = 0.45;
  double bracket_hi = 0.7;

  Table run(const Common& common) const {
    check_positive(omega, "--omega");
    const int steps = resolve_steps(common.steps_flag(), planar::kDefaultStepsPerPeriod);
    if (threshold) {
      check_range(bracket_lo, bracket_hi, "--bracket-lo", "--bracket-hi");
      const auto r = planar::stability_threshold(omega, {bracket_lo, bracket_hi}, steps);
      if (!r) throw NumericalFailure("stability-scan: no stability crossing in the alpha bracket");
      return {{"alpha_star", "trace_below", "trace_above"}, {{r->alpha_star, r->trace_below, r->trace_above}}};
    }
    check_points(points, "--points");
    check_range(alpha_min, alpha_max, "--alpha-min", "--alpha-max");
    Table t{{"alpha", "trace", "stable"}, {}};
    for (double a : linear_grid(alpha_min, alpha_max, points)) {
      const double tr = planar::threshold_trace(a, omega, steps);
      t.rows.push_back({a, tr, std::abs(tr) < 2.0});
    }
    return t;
  }
};

struct SpinSpectrum {
  double mu = 1.0;
  double field = 0.0;
  double omega = 1.0;
  double grid_min = 1e-3;
  double grid_max = 1e3;
  int points = 50;
  CLI::Option* points_option = nullptr;

  Table run(const Common& common) const {
    const int steps = resolve_steps(common.steps_flag(), 0);
    std::vector<spin::SpinParams> cases;
    if (points_option != nullptr && points_option->count() > 0) {
      check_points(points, "--points");
      check_positive(grid_min, "--grid-min");
      check_range(grid_min, grid_max, "--grid-min", "--grid-max");
      if (mu == 0.0) throw ConfigError("--mu: must be nonzero for a grid");
      for (double x : log_grid(grid_min, grid_max, points)) cases.push_back({mu, x * omega / mu, omega});
    } else {
      cases.push_back({mu, field, omega});
    }
    Table t{{"muB_over_homega", "deltaE_formula", "deltaE_numeric"}, {}};
    for (const auto& p : cases) {
      try {
        spin::validate(p);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("spin parameters: ") + e.what());
      }
      t.rows.push_back({p.mu * p.field / p.omega, spin::spin_quasienergy_spacing(p),
                        spin::spin_spacing_from_propagator(p, steps)});
    }
    return t;
  }
};

struct StepFloquet {
  std::string pattern;

  Table run(const Common&) const {
    const auto steps = parse_pattern(load_json(pattern, "--pattern"));
    Table t{{"line_kind", "energy"}, {}};
    for (std::size_t i = 0; i < steps.steps().size(); ++i) {
      const auto levels = quantum::instantaneous_spectrum(steps.steps()[i].hamiltonian);
      for (double e : quantum::transition_lines(levels)) {
        t.rows.push_back({"instantaneous_" + std::to_string(i + 1), e});
      }
    }
    const auto spectrum = quantum::quasienergies(quantum::step_propagator(steps), steps.period());
    for (double e : quantum::floquet_lines(spectrum)) t.rows.push_back({std::string("floquet"), e});
    return t;
  }
};

struct FieldsProbe {
  double amplitude = 1.0;
  double omega = 1.0;
  double light_speed = 1.0;
  double r_min = 1e-4;
  double r_max = 1e-1;
  int points = 7;
  int times = 16;
  bool node_field = false;
  double h = 1e-3;

  Table run(const Common&) const {
    check_positive(omega, "--omega");
    check_positive(light_speed, "--c");
    check_points(times, "--times");
    fields::TrapField field(amplitude, omega, light_speed);
    std::vector<double> t_grid;
    for (int i = 0; i < times; ++i) t_grid.push_back(kTwoPi / omega * i / times);
    const double scale = light_speed / omega;
    if (node_field) {
      check_positive(h, "--fd-step");
      const auto potential = [&field](const fields::Vec3& x, double t) {
        return fields::vector_potential_rotating(field, x, t);
      };
      Table t{{"t", "bx_fd", "by_fd", "bz_fd", "bx", "by", "bz"}, {}};
      for (double time : t_grid) {
        const fields::Vec3 fd = fields::magnetic_field_fd(potential, fields::Vec3::Zero(), time, h * scale);
        const fields::Vec3 b = fields::rotating_node_field(field, time);
        t.rows.push_back({time, fd.x(), fd.y(), fd.z(), b.x(), b.y(), b.z()});
      }
      return t;
    }
    check_points(points, "--points");
    check_positive(r_min, "--r-min");
    check_range(r_min, r_max, "--r-min", "--r-max");
    Table t{{"radius", "relative_error"}, {}};
    for (double r : log_grid(r_min, r_max, points)) {
      t.rows.push_back({r * scale, fields::nodal_approx_error(field, r * scale, t_grid)});
    }
    return t;
  }
};

void emit(const Table& table, const Common& common, std::ostream& out) {
  const Format format = common.format == "json" ? Format::json : Format::csv;
  std::ofstream file;
  std::ostream* target = &out;
  if (!common.out.empty()) {
    file.open(common.out, std::ios::binary);
    if (!file) throw ConfigError("--out: cannot open " + common.out);
    target = &file;
  }
  if (format == Format::csv) {
    write_csv(table, *target);
  } else {
    write_json(table, *target);
  }
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
    rows.push_back(std::move(obj));
  }
  out << rows.dump(2) << '\n';
}

hill::DriveProfile parse_profile(const json& doc) {
  const ProfileSpec spec = read_profile_spec(doc);
  return build_profile(spec, spec.beta0);
}

hill::DriveFamily parse_family(const json& doc) {
  const ProfileSpec spec = read_profile_spec(doc);
  build_profile(spec, 1.0);  // surfaces rescaling problems before any sweep
  return [spec](double beta0) { return build_profile(spec, beta0); };
}

quantum::StepPattern parse_pattern(const json& doc) {
  if (!doc.is_object()) throw ConfigError("pattern: expected a JSON object");
  reject_unknown(doc, {"steps"}, "pattern");
  if (!doc.contains("steps")) throw ConfigError("pattern.steps: missing required field");
  const json& steps = doc.at("steps");
  if (!steps.is_array() || steps.empty()) throw ConfigError("pattern.steps: expected a non-empty array");
  std::vector<quantum::StepPattern::Step> out;
  Eigen::Index dim = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const std::string where = "pattern.steps[" + std::to_string(i) + "]";
    const json& s = steps[i];
    if (!s.is_object()) throw ConfigError(where + ": expected an object");
    reject_unknown(s, {"re", "im", "tau"}, where);
    if (!s.contains("re")) throw ConfigError(where + ".re: missing required field");
    quantum::CMatrix m = read_real_matrix(s.at("re"), where + ".re");
    if (s.contains("im")) {
      const quantum::CMatrix im = read_real_matrix(s.at("im"), where + ".im");
      if (im.rows() != m.rows()) throw ConfigError(where + ".im: shape differs from re");
      m += quantum::Complex(0.0, 1.0) * im;
    }
    if (i == 0) dim = m.rows();
    if (m.rows() != dim) throw ConfigError(where + ".re: dimension differs from pattern.steps[0]");
    const double tau = require_number(s, "tau", where);
    if (!(tau > 0.0)) throw ConfigError(where + ".tau: must be positive");
    try {
      out.push_back({quantum::HermitianMatrix(m), tau});
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return quantum::StepPattern(std::move(out));
}

json load_json(const std::string& source, const std::string& what) {
  std::string text = source;
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || source[first] != '{') {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw ConfigError(what + ": cannot read " + source);
    std::stringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": invalid JSON (" + e.what() + ")");
  }
}

int resolve_steps(std::optional<int> flag, int module_default) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--steps: must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("FLOQUET_STEPS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 100000000) {
      throw ConfigError(std::string("FLOQUET_STEPS: expected a positive integer, got \"") + env + "\"");
    }
    return static_cast<int>(v);
  }
  return module_default;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Floquet spectra, stability charts and evolution loops of periodically driven systems",
               "floquet");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  std::map<std::string, Common> commons;
  auto make = [&](const std::string& name, const std::string& description) {
    CLI::App* sub = app.add_subcommand(name, description);
    add_common(sub, commons[name]);
    return sub;
  };

  OscSpectrum osc_spectrum;
  CLI::App* c = make("osc-spectrum", "Monodromy trace, stability and omega_F over a beta0 grid");
  c->add_option("--profile", osc_spectrum.profile, "Drive profile JSON (file or inline)")->required();
  c->add_option("--beta0-min", osc_spectrum.beta0_min);
  c->add_option("--beta0-max", osc_spectrum.beta0_max);
  c->add_option("--points", osc_spectrum.points);

  OscLoopFind loop_find;
  c = make("osc-loop-find", "beta0 at which the Floquet angle equals 2 pi k / n");
  c->add_option("--profile", loop_find.profile, "Drive profile JSON (file or inline)")->required();
  c->add_option("--k", loop_find.k);
  c->add_option("--n", loop_find.n);
  c->add_option("--lo", loop_find.lo, "Bracket start")->required();
  c->add_option("--hi", loop_find.hi, "Bracket end")->required();

  OscTrajectory trajectory;
  c = make("osc-trajectory", "Classical phase-plane path (t, q, p)");
  c->add_option("--profile", trajectory.profile, "Drive profile JSON (file or inline)")->required();
  c->add_option("--q0", trajectory.q0);
  c->add_option("--p0", trajectory.p0);
  c->add_option("--periods", trajectory.periods);
  c->add_option("--samples", trajectory.samples, "Samples per period");

  PlanarLoop planar_loop;
  c = make("planar-loop", "Loop check of the planar charge for beta0 + beta1 sin(omega t)");
  c->add_option("--beta0", planar_loop.beta0)->required();
  c->add_option("--beta1", planar_loop.beta1)->required();
  c->add_option("--omega", planar_loop.omega);
  c->add_option("--periods", planar_loop.periods)->required();
  c->add_option("--tol", planar_loop.tol, "Loop tolerance on max |M - 1|");
  c->add_flag("--polish", planar_loop.polish, "Refine beta1 holding beta0 fixed");
  c->add_option("--polish-tol", planar_loop.polish_tol);

  StabilityScan scan;
  c = make("stability-scan", "Radial trace over alpha for beta(t) = 2 alpha omega sin(omega t)");
  c->add_option("--omega", scan.omega);
  c->add_option("--alpha-min", scan.alpha_min);
  c->add_option("--alpha-max", scan.alpha_max);
  c->add_option("--points", scan.points);
  c->add_flag("--threshold", scan.threshold, "Locate the stability threshold alpha*");
  c->add_option("--bracket-lo", scan.bracket_lo);
  c->add_option("--bracket-hi", scan.bracket_hi);

  SpinSpectrum spin_spectrum;
  c = make("spin-spectrum", "Quasienergy spacing of a spin-1/2 in a rotating field");
  c->add_option("--mu", spin_spectrum.mu);
  c->add_option("--B", spin_spectrum.field);
  c->add_option("--omega", spin_spectrum.omega);
  c->add_option("--grid-min", spin_spectrum.grid_min, "Smallest muB/omega of the log grid");
  c->add_option("--grid-max", spin_spectrum.grid_max, "Largest muB/omega of the log grid");
  spin_spectrum.points_option = c->add_option("--points", spin_spectrum.points, "Log grid size (enables the grid)");

  StepFloquet step_floquet;
  c = make("step-floquet", "Instantaneous versus Floquet lines of a step pattern");
  c->add_option("--pattern", step_floquet.pattern, "Step pattern JSON (file or inline)")->required();

  FieldsProbe probe;
  c = make("fields-probe", "Nodal-point approximation error of the rotating laser trap");
  c->add_option("--amplitude", probe.amplitude);
  c->add_option("--omega", probe.omega);
  c->add_option("--c", probe.light_speed);
  c->add_option("--r-min", probe.r_min, "Smallest radius in units of c/omega");
  c->add_option("--r-max", probe.r_max, "Largest radius in units of c/omega");
  c->add_option("--points", probe.points);
  c->add_option("--times", probe.times, "Time samples per period");
  c->add_flag("--node-field", probe.node_field, "Finite-difference curl at the node instead");
  c->add_option("--fd-step", probe.h, "Curl spacing in units of c/omega");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kConfigError;
  }

  try {
    for (CLI::App* sub : app.get_subcommands()) {
      const std::string name = sub->get_name();
      const Common& common = commons.at(name);
      Table table;
      if (name == "osc-spectrum") table = osc_spectrum.run(common);
      else if (name == "osc-loop-find") table = loop_find.run(common);
      else if (name == "osc-trajectory") table = trajectory.run(common);
      else if (name == "planar-loop") table = planar_loop.run(common);
      else if (name == "stability-scan") table = scan.run(common);
      else if (name == "spin-spectrum") table = spin_spectrum.run(common);
      else if (name == "step-floquet") table = step_floquet.run(common);
      else table = probe.run(common);
      emit(table, common, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return kSuccess;
}

}  // namespace floquet::cli
