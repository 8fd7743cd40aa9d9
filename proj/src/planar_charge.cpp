#include "floquet/planar_charge.hpp"

#include "floquet/zone.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace floquet::planar {

namespace {

Matrix4 frozen_step(double beta, double dt) { return (generator(beta) * dt).exp(); }

Matrix4 power(const Matrix4& m, int n) {
  Matrix4 out = Matrix4::Identity();
  for (int i = 0; i < n; ++i) out = m * out;
  return out;
}

// Flow over [t0, t1]; piecewise-constant drives are split exactly at piece boundaries.
Matrix4 planar_flow(const hill::DriveProfile& profile, double t0, double t1, int n_steps) {
  Matrix4 m = Matrix4::Identity();
  if (profile.piecewise_constant()) {
    const auto pieces = profile.pieces();
    const double period = profile.period();
    double remaining = t1 - t0;
    double local = std::fmod(t0, period);
    if (local < 0.0) local += period;
    std::size_t idx = 0;
    while (idx + 1 < pieces.size() && local >= pieces[idx].duration) {
      local -= pieces[idx].duration;
      ++idx;
    }
    double left_in_piece = pieces[idx].duration - local;
    while (remaining > 1e-15 * period) {
      const double dt = std::min(left_in_piece, remaining);
      if (dt > 0.0) m = frozen_step(pieces[idx].beta, dt) * m;
      remaining -= dt;
      idx = (idx + 1) % pieces.size();
      left_in_piece = pieces[idx].duration;
    }
    return m;
  }
  if (n_steps < 1) throw std::invalid_argument("planar flow: n_steps must be at least 1");
  const double dt = (t1 - t0) / n_steps;
  for (int k = 0; k < n_steps; ++k) m = frozen_step(profile(t0 + (k + 0.5) * dt), dt) * m;
  return m;
}

}  // namespace

double beta_from_physical(const PhysicalParams& params) {
  if (!(params.charge > 0.0) || !(params.mass > 0.0) || !(params.light_speed > 0.0)) {
    throw std::invalid_argument("beta_from_physical: charge, mass and light speed must be positive");
  }
  if (!(params.field >= 0.0) || !std::isfinite(params.field)) {
    throw std::invalid_argument("beta_from_physical: field amplitude must be finite and >= 0");
  }
  return params.charge * params.field / (2.0 * params.mass * params.light_speed);
}

Matrix4 generator(double beta) {
  const double b2 = beta * beta;
  Matrix4 a;
  // clang-format off
  a <<  0.0,  beta, 1.0,   0.0,
       -beta, 0.0,  0.0,   1.0,
       -b2,   0.0,  0.0,   beta,
        0.0, -b2,  -beta,  0.0;
  // clang-format on
  return a;
}

Matrix4 symplectic_form() {
  Matrix4 j = Matrix4::Zero();
  j.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  j.bottomLeftCorner<2, 2>() = -Eigen::Matrix2d::Identity();
  return j;
}

double symplectic_defect(const Matrix4& m) {
  const Matrix4 j = symplectic_form();
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
}

Matrix4 planar_monodromy(const hill::DriveProfile& profile, int n_periods, int n_steps) {
  if (n_periods < 1) throw std::invalid_argument("planar_monodromy: n_periods must be at least 1");
  return power(planar_flow(profile, 0.0, profile.period(), n_steps), n_periods);
}

Matrix4 frame_rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2d r;
  r << c, s, -s, c;
  Matrix4 m = Matrix4::Zero();
  m.topLeftCorner<2, 2>() = r;
  m.bottomRightCorner<2, 2>() = r;
  return m;
}

Matrix4 radial_lift(const hill::Matrix2& radial) {
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Matrix4 m;
  m.topLeftCorner<2, 2>() = radial(0, 0) * id;
  m.topRightCorner<2, 2>() = radial(0, 1) * id;
  m.bottomLeftCorner<2, 2>() = radial(1, 0) * id;
  m.bottomRightCorner<2, 2>() = radial(1, 1) * id;
  return m;
}

Matrix4 FrameReduction::reconstruct() const { return frame_rotation(theta) * radial_lift(radial); }

FrameReduction rotating_frame_reduction(const hill::DriveProfile& profile, int n_periods,
                                        int n_steps) {
  if (n_periods < 1) {
    throw std::invalid_argument("rotating_frame_reduction: n_periods must be at least 1");
  }
  const hill::Matrix2 one = hill::monodromy(profile, n_steps);
  hill::Matrix2 radial = hill::Matrix2::Identity();
  for (int i = 0; i < n_periods; ++i) radial = one * radial;
  return {n_periods * profile.period_integral(), radial};
}

LoopCheck planar_loop_check(const hill::DriveProfile& profile, int n_periods, double tol,
                            int n_steps) {
  const Matrix4 m = planar_monodromy(profile, n_periods, n_steps);
  const double deviation = (m - Matrix4::Identity()).cwiseAbs().maxCoeff();
  return {deviation < tol, deviation};
}

std::optional<PolishedLoop> polish_loop_beta1(double beta0, double beta1_guess, double omega,
                                              int n_periods, double tol, double search_radius,
                                              int n_steps) {
  if (n_periods < 1) throw std::invalid_argument("polish_loop_beta1: n_periods must be at least 1");
  auto radial_trace = [&](double beta1) {
    return hill::monodromy(hill::DriveProfile::offset_sinusoid(beta0, beta1, omega), n_steps).trace();
  };
  const double guess_trace = radial_trace(beta1_guess);
  if (std::abs(guess_trace) > 2.0) return std::nullopt;
  const double angle = std::acos(std::clamp(0.5 * guess_trace, -1.0, 1.0));
  const int winding = static_cast<int>(std::lround(n_periods * angle / kTwoPi));
  const double target = 2.0 * std::cos(kTwoPi * winding / n_periods);

  double lo = beta1_guess - search_radius;
  double hi = beta1_guess + search_radius;
  double f_lo = radial_trace(lo) - target;
  const double f_hi = radial_trace(hi) - target;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = radial_trace(mid) - target;
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
  PolishedLoop out{};
  out.beta1 = 0.5 * (lo + hi);
  out.winding = winding;
  out.radial_trace = radial_trace(out.beta1);
  out.check = planar_loop_check(hill::DriveProfile::offset_sinusoid(beta0, out.beta1, omega),
                                n_periods, tol, n_steps);
  return out;
}

double threshold_trace(double alpha, double omega, int n_steps) {
  return hill::monodromy(hill::DriveProfile::sinusoid(2.0 * alpha * omega, omega), n_steps).trace();
}

std::optional<ThresholdResult> stability_threshold(double omega,
                                                   std::pair<double, double> alpha_bracket,
                                                   int n_steps, double tolerance) {
  if (!(omega > 0.0)) throw std::invalid_argument("stability_threshold: omega must be positive");
  auto excess = [&](double alpha) { return std::abs(threshold_trace(alpha, omega, n_steps)) - 2.0; };
  double lo = std::min(alpha_bracket.first, alpha_bracket.second);
  double hi = std::max(alpha_bracket.first, alpha_bracket.second);
  ThresholdResult out{};
  out.trace_below = threshold_trace(lo, omega, n_steps);
  out.trace_above = threshold_trace(hi, omega, n_steps);
  double f_lo = std::abs(out.trace_below) - 2.0;
  const double f_hi = std::abs(out.trace_above) - 2.0;
  if ((f_lo > 0.0) == (f_hi > 0.0)) return std::nullopt;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = excess(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  out.alpha_star = 0.5 * (lo + hi);
  return out;
}

std::vector<PlanarSample> planar_trajectory(const hill::DriveProfile& profile,
                                            const State4& initial, double t_end,
                                            int n_steps_per_period) {
  if (!(t_end >= 0.0)) throw std::invalid_argument("planar_trajectory: t_end must be >= 0");
  if (n_steps_per_period < 1) {
    throw std::invalid_argument("planar_trajectory: n_steps_per_period must be at least 1");
  }
  const int n_total = std::max(
      1, static_cast<int>(std::ceil(n_steps_per_period * t_end / profile.period() - 1e-9)));
  const double dt = t_end / n_total;
  std::vector<PlanarSample> path;
  path.reserve(static_cast<std::size_t>(n_total) + 1);
  State4 x = initial;
  path.push_back({0.0, x});
  for (int k = 0; k < n_total; ++k) {
    const double t = k * dt;
    x = planar_flow(profile, t, t + dt, 1) * x;
    path.push_back({t + dt, x});
  }
  return path;
}

}  // namespace floquet::planar
