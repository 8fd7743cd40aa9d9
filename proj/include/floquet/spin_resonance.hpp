#pragma once

// Spin-1/2 with moment mu in a field of magnitude B rotating at frequency omega
// about the axis n (hbar = 1).
//
// Representation: n = -z, so the field B(t) = B (cos wt, -sin wt, 0) turns in the
// positive sense about n and
//
//   H(t) = -mu B (cos wt sx - sin wt sy)
//   U(t) = e^{-i w t n.sigma / 2} e^{-itF} = e^{+i w t sz / 2} e^{-itF}
//   F    = [[w/2, -mu B], [-mu B, -w/2]],   eig F = +-sqrt(mu^2 B^2 + w^2/4)
//
// Only spectral statements are representation independent.

#include "floquet/propagator.hpp"

#include <vector>

namespace floquet::spin {

inline constexpr int kDefaultStepsPerPeriod = 16384;

struct SpinParams {
  double mu;
  double field;
  double omega;

  [[nodiscard]] double period() const;
};

void validate(const SpinParams& params);

/// H(t) at frozen time t.
quantum::HermitianMatrix spin_instantaneous(const SpinParams& params, double t);

/// The time-independent rotating-frame generator F.
quantum::HermitianMatrix spin_floquet_generator(const SpinParams& params);

/// e^{+i w t sz / 2} e^{-itF}
quantum::UnitaryMatrix factorized_propagator(const SpinParams& params, double t);

/// Max over the grid of |U_direct(t) - factorized_propagator(t)|, U_direct integrated
/// with `n_steps_per_period` resolution.
double verify_factorization(const SpinParams& params, const std::vector<double>& t_grid,
                            int n_steps_per_period = kDefaultStepsPerPeriod,
                            quantum::Integrator integrator = quantum::Integrator::midpoint);

/// Closed-form spacing  w (sqrt(1 + (2 mu B / w)^2) - 1).
double spin_quasienergy_spacing(const SpinParams& params);

/// The same spacing from the one-period propagator. The quasienergy gap fixes the
/// spacing modulo omega; the branch is selected by a short rotating-frame probe
/// whose principal logarithm recovers F without wrapping.
double spin_spacing_from_propagator(const SpinParams& params, int n_steps_per_period = 0);

/// Folded one-period quasienergy gap in [0, omega/2].
double spin_zone_gap(const SpinParams& params, int n_steps_per_period = 0);

}  // namespace floquet::spin
