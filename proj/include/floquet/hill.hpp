#pragma once

// Pulsed parametric oscillator  q'' + beta(t)^2 q = 0  (H = p^2/2 + beta(t)^2 q^2/2).
//
// The classical one-period monodromy M fixes the whole quasienergy ladder of the
// quantum oscillator: for |tr M| < 2 the Floquet angle omega_F T = arccos(tr M / 2)
// and the levels are omega_F (n + 1/2) modulo omega.

#include "floquet/zone.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace floquet::hill {

using Matrix2 = Eigen::Matrix2d;

inline constexpr int kDefaultStepsPerPeriod = 4096;

struct DriveStep {
  double beta;
  double duration;
};

enum class DriveKind { constant, steps, sinusoid, offset_sinusoid };

/// Periodic scalar drive beta(t).
class DriveProfile {
 public:
  static DriveProfile constant(double beta0, double period = 1.0);
  static DriveProfile steps(std::vector<DriveStep> steps);
  /// beta0 sin(omega t)
  static DriveProfile sinusoid(double beta0, double omega);
  /// beta0 + beta1 sin(omega t)
  static DriveProfile offset_sinusoid(double beta0, double beta1, double omega);

  [[nodiscard]] DriveKind kind() const;
  [[nodiscard]] double period() const { return period_; }
  /// True when beta(t) is piecewise constant and the flow is available in closed form.
  [[nodiscard]] bool piecewise_constant() const;

  /// beta(t) with exact periodic wrap-around.
  [[nodiscard]] double operator()(double t) const;

  /// Integral of beta over one period.
  [[nodiscard]] double period_integral() const;

  /// Piecewise-constant pieces (steps, or a single constant piece). Empty for sinusoids.
  [[nodiscard]] std::vector<DriveStep> pieces() const;

  [[nodiscard]] std::string describe() const;

 private:
  struct Constant {
    double beta0;
  };
  struct Steps {
    std::vector<DriveStep> steps;
  };
  struct Sinusoid {
    double beta0;
    double omega;
  };
  struct OffsetSinusoid {
    double beta0;
    double beta1;
    double omega;
  };
  using Shape = std::variant<Constant, Steps, Sinusoid, OffsetSinusoid>;

  DriveProfile(Shape shape, double period) : shape_(std::move(shape)), period_(period) {}

  Shape shape_;
  double period_;
};

/// A one-parameter family of drives, beta0 -> profile.
using DriveFamily = std::function<DriveProfile(double)>;

DriveFamily constant_family(double period = 1.0);
/// Rectangular pulses beta0, 0 in lapses T/2, T/2.
DriveFamily rectangular_family(double period = 1.0);
DriveFamily sinusoid_family(double omega = kTwoPi);

/// Exact flow of q'' + beta^2 q = 0 over a lapse `dt` with frozen beta.
Matrix2 frozen_flow(double beta, double dt);

/// Flow map (q, p)(t0) -> (q, p)(t1). Piecewise-constant drives are propagated
/// exactly (the straddled piece is split); smooth drives use n_steps midpoint
/// steps, each an exact rotation block at the midpoint value of beta.
Matrix2 flow(const DriveProfile& profile, double t0, double t1, int n_steps);

/// One-period monodromy. n_steps is ignored for piecewise-constant drives.
Matrix2 monodromy(const DriveProfile& profile, int n_steps = kDefaultStepsPerPeriod);

enum class Stability { elliptic, parabolic, hyperbolic };

std::string to_string(Stability s);

struct FloquetResult {
  Stability stability;
  std::optional<double> omega_F;  // in [0, pi/T]
  std::optional<int> loop_order;  // least n with M^n = 1
  double trace;
};

inline constexpr double kParabolicTolerance = 1e-12;
inline constexpr double kLoopTolerance = 1e-8;

FloquetResult floquet_result(const Matrix2& m, double period, int n_max = 64);

struct LoopRoot {
  double beta0;
  double trace;
  double loop_deviation;  // max |(M^n - 1)_ij| at the root
};

/// Finds beta0 in `bracket` where the Floquet angle of the family crosses
/// 2 pi k / n, by bisection on tr M - 2 cos(2 pi k / n). Returns nullopt when the
/// bracket shows no sign change.
std::optional<LoopRoot> find_loop_beta(const DriveFamily& family, int k, int n,
                                       std::pair<double, double> bracket,
                                       int n_steps = kDefaultStepsPerPeriod,
                                       double tolerance = 1e-10);

struct ScanRow {
  double beta0;
  double trace;
  Stability stability;
  std::optional<double> omega_F;
};

std::vector<ScanRow> omega_F_scan(const DriveFamily& family, const std::vector<double>& grid,
                                  int n_steps = kDefaultStepsPerPeriod);

/// Quasienergy ladder omega_F (n + 1/2), n = 0..n_levels-1, reduced to (-omega/2, omega/2].
std::vector<double> oscillator_quasienergies(double omega_F, double omega, int n_levels);

struct PhasePoint {
  double t;
  double q;
  double p;
};

/// Phase-plane path sampled n_steps times per period (plus the start point).
std::vector<PhasePoint> classical_trajectory(const DriveProfile& profile, double q0, double p0,
                                             double t_end,
                                             int n_steps_per_period = kDefaultStepsPerPeriod);

}  // namespace floquet::hill
