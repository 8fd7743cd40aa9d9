#include "floquet/hill.hpp"

#include "floquet/zone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace floquet::hill {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string("DriveProfile: non-finite ") + what);
}

double wrap(double t, double period) {
  double local = std::fmod(t, period);
  if (local < 0.0) local += period;
  return local;
}

Matrix2 piecewise_flow(const std::vector<DriveStep>& pieces, double period, double t0, double t1) {
  Matrix2 m = Matrix2::Identity();
  double remaining = t1 - t0;
  if (remaining <= 0.0) return m;

  // Locate the piece containing t0.
  double local = wrap(t0, period);
  std::size_t idx = 0;
  while (idx + 1 < pieces.size() && local >= pieces[idx].duration) {
    local -= pieces[idx].duration;
    ++idx;
  }
  double left_in_piece = pieces[idx].duration - local;

  while (remaining > 0.0) {
    const double dt = std::min(left_in_piece, remaining);
    if (dt > 0.0) m = frozen_flow(pieces[idx].beta, dt) * m;
    remaining -= dt;
    idx = (idx + 1) % pieces.size();
    left_in_piece = pieces[idx].duration;
    if (remaining < 1e-15 * period) break;
  }
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// DriveProfile

DriveProfile DriveProfile::constant(double beta0, double period) {
  require_finite(beta0, "beta0");
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw std::invalid_argument("DriveProfile: period must be positive");
  }
  return {Constant{beta0}, period};
}

DriveProfile DriveProfile::steps(std::vector<DriveStep> steps) {
  if (steps.empty()) throw std::invalid_argument("DriveProfile: steps list is empty");
  double period = 0.0;
  for (const auto& s : steps) {
    require_finite(s.beta, "step beta");
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
      throw std::invalid_argument("DriveProfile: step durations must be positive");
    }
    period += s.duration;
  }
  return {Steps{std::move(steps)}, period};
}

DriveProfile DriveProfile::sinusoid(double beta0, double omega) {
  require_finite(beta0, "beta0");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("DriveProfile: omega must be positive");
  }
  return {Sinusoid{beta0, omega}, kTwoPi / omega};
}

DriveProfile DriveProfile::offset_sinusoid(double beta0, double beta1, double omega) {
  require_finite(beta0, "beta0");
  require_finite(beta1, "beta1");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw std::invalid_argument("DriveProfile: omega must be positive");
  }
  return {OffsetSinusoid{beta0, beta1, omega}, kTwoPi / omega};
}

DriveKind DriveProfile::kind() const {
  return std::visit(Overloaded{
                        [](const Constant&) { return DriveKind::constant; },
                        [](const Steps&) { return DriveKind::steps; },
                        [](const Sinusoid&) { return DriveKind::sinusoid; },
                        [](const OffsetSinusoid&) { return DriveKind::offset_sinusoid; },
                    },
                    shape_);
}

bool DriveProfile::piecewise_constant() const {
  const auto k = kind();
  return k == DriveKind::constant || k == DriveKind::steps;
}

double DriveProfile::operator()(double t) const {
  const double local = wrap(t, period_);
  return std::visit(Overloaded{
                        [](const Constant& c) { return c.beta0; },
                        [local](const Steps& s) {
                          double rest = local;
                          for (const auto& step : s.steps) {
                            if (rest < step.duration) return step.beta;
                            rest -= step.duration;
                          }
                          return s.steps.back().beta;
                        },
                        [local](const Sinusoid& s) { return s.beta0 * std::sin(s.omega * local); },
                        [local](const OffsetSinusoid& s) {
                          return s.beta0 + s.beta1 * std::sin(s.omega * local);
                        },
                    },
                    shape_);
}

double DriveProfile::period_integral() const {
  const double period = period_;
  return std::visit(Overloaded{
                        [period](const Constant& c) { return c.beta0 * period; },
                        [](const Steps& s) {
                          double sum = 0.0;
                          for (const auto& step : s.steps) sum += step.beta * step.duration;
                          return sum;
                        },
                        [](const Sinusoid&) { return 0.0; },
                        [period](const OffsetSinusoid& s) { return s.beta0 * period; },
                    },
                    shape_);
}

std::vector<DriveStep> DriveProfile::pieces() const {
  const double period = period_;
  return std::visit(Overloaded{
                        [period](const Constant& c) { return std::vector<DriveStep>{{c.beta0, period}}; },
                        [](const Steps& s) { return s.steps; },
                        [](const Sinusoid&) { return std::vector<DriveStep>{}; },
                        [](const OffsetSinusoid&) { return std::vector<DriveStep>{}; },
                    },
                    shape_);
}

std::string DriveProfile::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const Constant& c) { os << "constant(beta0=" << c.beta0 << ", T=" << period_ << ")"; },
                 [&](const Steps& s) { os << "steps(n=" << s.steps.size() << ", T=" << period_ << ")"; },
                 [&](const Sinusoid& s) { os << "sin(beta0=" << s.beta0 << ", omega=" << s.omega << ")"; },
                 [&](const OffsetSinusoid& s) {
                   os << "offset_sin(beta0=" << s.beta0 << ", beta1=" << s.beta1
                      << ", omega=" << s.omega << ")";
                 },
             },
             shape_);
  return os.str();
}

DriveFamily constant_family(double period) {
  return [period](double beta0) { return DriveProfile::constant(beta0, period); };
}

DriveFamily rectangular_family(double period) {
  return [period](double beta0) {
    return DriveProfile::steps({{beta0, 0.5 * period}, {0.0, 0.5 * period}});
  };
}

DriveFamily sinusoid_family(double omega) {
  return [omega](double beta0) { return DriveProfile::sinusoid(beta0, omega); };
}

// ---------------------------------------------------------------------------
// Flows

Matrix2 frozen_flow(double beta, double dt) {
  Matrix2 m;
  const double phase = beta * dt;
  if (std::abs(phase) < 1e-300) {
    m << 1.0, dt, 0.0, 1.0;
    return m;
  }
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  m << c, s / beta, -beta * s, c;
  return m;
}

Matrix2 flow(const DriveProfile& profile, double t0, double t1, int n_steps) {
  if (profile.piecewise_constant()) {
    return piecewise_flow(profile.pieces(), profile.period(), t0, t1);
  }
  if (n_steps < 1) throw std::invalid_argument("flow: n_steps must be at least 1");
  const double dt = (t1 - t0) / n_steps;
  Matrix2 m = Matrix2::Identity();
  for (int k = 0; k < n_steps; ++k) m = frozen_flow(profile(t0 + (k + 0.5) * dt), dt) * m;
  return m;
}

Matrix2 monodromy(const DriveProfile& profile, int n_steps) {
  return flow(profile, 0.0, profile.period(), n_steps);
}

// ---------------------------------------------------------------------------
// Floquet analysis

std::string to_string(Stability s) {
  switch (s) {
    case Stability::elliptic:
      return "elliptic";
    case Stability::parabolic:
      return "parabolic";
    case Stability::hyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

FloquetResult floquet_result(const Matrix2& m, double period, int n_max) {
  if (n_max < 1) throw std::invalid_argument("floquet_result: n_max must be at least 1");
  if (!(period > 0.0)) throw std::invalid_argument("floquet_result: period must be positive");
  FloquetResult out{};
  out.trace = m.trace();
  const double excess = std::abs(out.trace) - 2.0;
  if (excess > kParabolicTolerance) {
    out.stability = Stability::hyperbolic;
    return out;
  }
  out.stability = excess < -kParabolicTolerance ? Stability::elliptic : Stability::parabolic;
  out.omega_F = std::acos(std::clamp(0.5 * out.trace, -1.0, 1.0)) / period;

  Matrix2 power = Matrix2::Identity();
  for (int n = 1; n <= n_max; ++n) {
    power = m * power;
    if ((power - Matrix2::Identity()).cwiseAbs().maxCoeff() < kLoopTolerance) {
      out.loop_order = n;
      break;
    }
  }
  return out;
}

std::optional<LoopRoot> find_loop_beta(const DriveFamily& family, int k, int n,
                                       std::pair<double, double> bracket, int n_steps,
                                       double tolerance) {
  if (n < 1) throw std::invalid_argument("find_loop_beta: loop order n must be at least 1");
  const double target = 2.0 * std::cos(kTwoPi * k / n);
  auto residual = [&](double beta0) { return monodromy(family(beta0), n_steps).trace() - target; };

  double lo = std::min(bracket.first, bracket.second);
  double hi = std::max(bracket.first, bracket.second);
  double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo == 0.0) hi = lo;
  else if (f_hi == 0.0) lo = hi;
  else if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;

  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  LoopRoot root{};
  root.beta0 = 0.5 * (lo + hi);
  const Matrix2 m = monodromy(family(root.beta0), n_steps);
  root.trace = m.trace();
  Matrix2 power = Matrix2::Identity();
  for (int i = 0; i < n; ++i) power = m * power;
  root.loop_deviation = (power - Matrix2::Identity()).cwiseAbs().maxCoeff();
  return root;
}

std::vector<ScanRow> omega_F_scan(const DriveFamily& family, const std::vector<double>& grid,
                                  int n_steps) {
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (double beta0 : grid) {
    const DriveProfile profile = family(beta0);
    const FloquetResult r = floquet_result(monodromy(profile, n_steps), profile.period(), 1);
    rows.push_back({beta0, r.trace, r.stability, r.omega_F});
  }
  return rows;
}

std::vector<double> oscillator_quasienergies(double omega_F, double omega, int n_levels) {
  if (!(omega_F >= 0.0)) throw std::invalid_argument("oscillator_quasienergies: omega_F must be >= 0");
  if (!(omega > 0.0)) throw std::invalid_argument("oscillator_quasienergies: omega must be positive");
  std::vector<double> levels;
  for (int n = 0; n < n_levels; ++n) levels.push_back(reduce_to_zone(omega_F * (n + 0.5), omega));
  return levels;
}

std::vector<PhasePoint> classical_trajectory(const DriveProfile& profile, double q0, double p0,
                                             double t_end, int n_steps_per_period) {
  if (!(t_end >= 0.0)) throw std::invalid_argument("classical_trajectory: t_end must be >= 0");
  if (n_steps_per_period < 1) {
    throw std::invalid_argument("classical_trajectory: n_steps_per_period must be at least 1");
  }
  const int n_total = std::max(
      1, static_cast<int>(std::ceil(n_steps_per_period * t_end / profile.period() - 1e-9)));
  const double dt = t_end / n_total;

  std::vector<PhasePoint> path;
  path.reserve(static_cast<std::size_t>(n_total) + 1);
  Eigen::Vector2d state(q0, p0);
  path.push_back({0.0, q0, p0});
  for (int k = 0; k < n_total; ++k) {
    const double t = k * dt;
    state = flow(profile, t, t + dt, 1) * state;
    path.push_back({t + dt, state(0), state(1)});
  }
  return path;
}

}  // namespace floquet::hill
