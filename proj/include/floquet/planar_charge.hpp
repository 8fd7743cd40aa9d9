#pragma once

// Charged particle in a homogeneous axial field B(t) n, in the plane orthogonal
// to n. With beta(t) = eB(t)/2mc and mass-scaled variables the in-plane
// Hamiltonian is
//
//   H = (p1^2 + p2^2)/2 - beta(t) M3 + beta(t)^2 (q1^2 + q2^2)/2,   M3 = q1 p2 - q2 p1,
//
// acting on the state (q1, q2, p1, p2). The motion along n is free and not simulated.
// Because M3 commutes with the rest, the flow factorizes into a frame rotation by
// theta = int beta dt and the radial Hill flow u'' + beta^2 u = 0 in both planes.

#include "floquet/hill.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace floquet::planar {

using Matrix4 = Eigen::Matrix4d;
using State4 = Eigen::Vector4d;

inline constexpr int kDefaultStepsPerPeriod = 4096;

/// Gaussian-unit inputs of the manipulation function.
struct PhysicalParams {
  double charge;
  double mass;
  double light_speed;
  double field;
};

/// beta = eB / 2mc (inverse time).
double beta_from_physical(const PhysicalParams& params);

/// Generator A of the frozen-beta linear system x' = A x.
Matrix4 generator(double beta);

/// Standard symplectic form on (q1, q2, p1, p2).
Matrix4 symplectic_form();

/// max |(M^T J M - J)_ij|
double symplectic_defect(const Matrix4& m);

/// Flow over n_periods periods. Each time step applies the exact exponential of
/// the generator frozen at the midpoint value of beta; piecewise-constant drives
/// are propagated piece by piece with no discretization.
Matrix4 planar_monodromy(const hill::DriveProfile& profile, int n_periods,
                         int n_steps = kDefaultStepsPerPeriod);

/// Rotation generated by -theta M3, acting jointly on (q1, q2) and (p1, p2).
Matrix4 frame_rotation(double theta);

/// A 2x2 radial flow applied identically in the (q1, p1) and (q2, p2) planes.
Matrix4 radial_lift(const hill::Matrix2& radial);

struct FrameReduction {
  double theta;
  hill::Matrix2 radial;

  /// frame_rotation(theta) * radial_lift(radial)
  [[nodiscard]] Matrix4 reconstruct() const;
};

FrameReduction rotating_frame_reduction(const hill::DriveProfile& profile, int n_periods,
                                        int n_steps = kDefaultStepsPerPeriod);

struct LoopCheck {
  bool is_loop;
  double deviation;  // max |(M - 1)_ij|
};

LoopCheck planar_loop_check(const hill::DriveProfile& profile, int n_periods, double tol,
                            int n_steps = kDefaultStepsPerPeriod);

struct PolishedLoop {
  double beta1;
  int winding;           // k in the radial target angle 2 pi k / n_periods
  double radial_trace;   // at the polished beta1
  LoopCheck check;       // planar check at the polished beta1
};

/// Holding beta0 and omega fixed, adjusts beta1 of an offset-sinusoid drive so that
/// the radial monodromy closes after n_periods. The winding k is taken from the
/// Floquet angle at the starting guess. Returns nullopt if no root is bracketed
/// within `search_radius` of the guess.
std::optional<PolishedLoop> polish_loop_beta1(double beta0, double beta1_guess, double omega,
                                              int n_periods, double tol = 1e-6,
                                              double search_radius = 0.05,
                                              int n_steps = kDefaultStepsPerPeriod);

struct ThresholdResult {
  double alpha_star;
  double trace_below;  // radial trace at the lower bracket end
  double trace_above;  // radial trace at the upper bracket end
};

/// Radial trace over one period of u'' + (2 alpha omega)^2 sin^2(omega t) u = 0.
/// alpha is measured against 2 omega, the frequency at which beta(t)^2 oscillates.
double threshold_trace(double alpha, double omega, int n_steps = kDefaultStepsPerPeriod);

/// Bisection root of |tr M_radial(alpha)| - 2 inside the bracket, to `tolerance`.
/// Returns nullopt if the bracket shows no crossing.
std::optional<ThresholdResult> stability_threshold(double omega,
                                                   std::pair<double, double> alpha_bracket = {0.45, 0.7},
                                                   int n_steps = kDefaultStepsPerPeriod,
                                                   double tolerance = 1e-8);

struct PlanarSample {
  double t;
  State4 state;
};

std::vector<PlanarSample> planar_trajectory(const hill::DriveProfile& profile,
                                            const State4& initial, double t_end,
                                            int n_steps_per_period = kDefaultStepsPerPeriod);

}  // namespace floquet::planar
