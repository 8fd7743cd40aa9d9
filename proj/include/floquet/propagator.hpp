#pragma once

// Finite-dimensional propagators for time-periodic Hamiltonians (hbar = 1).
//
//   U(t1, t0)       solves dU/dt = -i H(t) U
//   U(T) = e^{-iTF} one-period (Floquet) operator and its generator F
//   G(t) = U(t) e^{itF}  periodic epicycle factor, G(nT) = 1
//
// Quasienergies are reported in the zone (-omega/2, omega/2], omega = 2 pi / T.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace floquet::quantum {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

/// Self-adjoint dim x dim matrix. Construction rejects asymmetric input.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(CMatrix entries, double tolerance = kHermitianTolerance);

  static HermitianMatrix zero(Eigen::Index dim);
  static HermitianMatrix diagonal(const std::vector<double>& values);

  [[nodiscard]] const CMatrix& matrix() const { return entries_; }
  [[nodiscard]] Eigen::Index dim() const { return entries_.rows(); }

  /// Ascending eigenvalues.
  [[nodiscard]] std::vector<double> eigenvalues() const;

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator*(double scale) const;

 private:
  CMatrix entries_;
};

/// Unitary dim x dim matrix together with the time span it propagates over.
class UnitaryMatrix {
 public:
  UnitaryMatrix(CMatrix entries, double t_start, double t_end,
                double tolerance = kUnitaryTolerance);

  static UnitaryMatrix identity(Eigen::Index dim, double t = 0.0);

  [[nodiscard]] const CMatrix& matrix() const { return entries_; }
  [[nodiscard]] Eigen::Index dim() const { return entries_.rows(); }
  [[nodiscard]] double t_start() const { return t_start_; }
  [[nodiscard]] double t_end() const { return t_end_; }

  /// max |(U^dagger U - 1)_ij|
  [[nodiscard]] double unitarity_defect() const;

  /// Composition `later * earlier`: apply `earlier` first.
  friend UnitaryMatrix operator*(const UnitaryMatrix& later, const UnitaryMatrix& earlier);

 private:
  CMatrix entries_;
  double t_start_;
  double t_end_;
};

/// Ordered list of (H_i, tau_i) applied left to right in time.
class StepPattern {
 public:
  struct Step {
    HermitianMatrix hamiltonian;
    double duration;
  };

  explicit StepPattern(std::vector<Step> steps);

  [[nodiscard]] const std::vector<Step>& steps() const { return steps_; }
  [[nodiscard]] double period() const { return period_; }
  [[nodiscard]] double omega() const;
  [[nodiscard]] Eigen::Index dim() const { return steps_.front().hamiltonian.dim(); }

  /// H(t) with periodic wrap-around; at a boundary the later step applies.
  [[nodiscard]] const HermitianMatrix& at(double t) const;

 private:
  std::vector<Step> steps_;
  double period_ = 0.0;
};

struct QuasiSpectrum {
  std::vector<double> values;  // ascending, each in (-omega/2, omega/2]
  double omega = 0.0;
};

using TimeDependentHamiltonian = std::function<HermitianMatrix(double)>;

enum class Integrator {
  midpoint,  // U <- exp(-i dt H(t + dt/2)) U, second order
  magnus4,   // two-point Gauss Magnus exponential, fourth order
};

inline constexpr int kDefaultStepsPerPeriod = 4096;

/// e^{-itH} by eigendecomposition.
UnitaryMatrix expm_hermitian(const HermitianMatrix& h, double t);

/// e^{-i tau_n H_n} ... e^{-i tau_1 H_1}, the one-period operator of a step pattern.
UnitaryMatrix step_propagator(const StepPattern& pattern);

/// U(t, 0) for a step pattern at any t >= 0; a step straddling t is split exactly.
UnitaryMatrix step_evolve(const StepPattern& pattern, double t);

/// U(t1, t0) by fixed-step exponential integration with n_steps steps.
UnitaryMatrix evolve(const TimeDependentHamiltonian& h, double t0, double t1, int n_steps,
                     Integrator integrator = Integrator::midpoint);

/// U(T, 0).
inline UnitaryMatrix evolve(const TimeDependentHamiltonian& h, double period, int n_steps,
                            Integrator integrator = Integrator::midpoint) {
  return evolve(h, 0.0, period, n_steps, integrator);
}

/// Principal-branch Floquet Hamiltonian: e^{-iTF} = U with spec(F) in (-omega/2, omega/2].
HermitianMatrix floquet_hamiltonian(const UnitaryMatrix& u, double period);

QuasiSpectrum quasienergies(const UnitaryMatrix& u, double period);

/// G(t, 0) = U(t, 0) e^{itF}, where U(t, 0) is integrated with
/// n_steps_per_period resolution.
UnitaryMatrix epicycle(const TimeDependentHamiltonian& h, const HermitianMatrix& f, double t,
                       double period, int n_steps_per_period = kDefaultStepsPerPeriod,
                       Integrator integrator = Integrator::midpoint);

/// Epicycle factor of a step pattern (exact, no integration error).
UnitaryMatrix epicycle(const StepPattern& pattern, const HermitianMatrix& f, double t);

std::vector<double> instantaneous_spectrum(const HermitianMatrix& h);

/// Positive differences E_j - E_i (j > i) of a level list, ascending, with
/// near-duplicates (within `merge_tolerance`) merged.
std::vector<double> transition_lines(const std::vector<double>& levels,
                                     double merge_tolerance = 1e-9);

/// Quasienergy differences folded onto [0, omega/2], ascending, merged.
std::vector<double> floquet_lines(const QuasiSpectrum& spectrum, double merge_tolerance = 1e-9);

// Pauli matrices, handy for two-level models.
HermitianMatrix sigma_x();
HermitianMatrix sigma_y();
HermitianMatrix sigma_z();
HermitianMatrix identity_hamiltonian(Eigen::Index dim);

/// max |A_ij - B_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace floquet::quantum
