#include "floquet/spin_resonance.hpp"

#include "floquet/zone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace floquet::spin {

using quantum::CMatrix;
using quantum::Complex;
using quantum::HermitianMatrix;
using quantum::UnitaryMatrix;

namespace {

// Magnus-4 steps per period for the one-period spacing extraction. The error grows
// with the field strength, so the resolution scales with mu B / omega.
int auto_steps(const SpinParams& p) {
  const double ratio = std::abs(p.mu * p.field) / p.omega;
  return std::max(4096, static_cast<int>(std::ceil(512.0 * ratio)));
}

quantum::TimeDependentHamiltonian lab_hamiltonian(const SpinParams& p) {
  return [p](double t) { return spin_instantaneous(p, t); };
}

}  // namespace

double SpinParams::period() const { return kTwoPi / omega; }

void validate(const SpinParams& params) {
  if (!(params.omega > 0.0) || !std::isfinite(params.omega)) {
    throw std::invalid_argument("SpinParams: omega must be positive");
  }
  if (!std::isfinite(params.mu) || !std::isfinite(params.field)) {
    throw std::invalid_argument("SpinParams: mu and B must be finite");
  }
  if (params.field < 0.0) throw std::invalid_argument("SpinParams: B must be >= 0");
}

HermitianMatrix spin_instantaneous(const SpinParams& params, double t) {
  const double a = -params.mu * params.field;
  const double phase = params.omega * t;
  // a (cos wt sx - sin wt sy): off-diagonal element a (cos wt + i sin wt)
  CMatrix h(2, 2);
  h << 0.0, a * std::polar(1.0, phase), a * std::polar(1.0, -phase), 0.0;
  return HermitianMatrix(std::move(h));
}

HermitianMatrix spin_floquet_generator(const SpinParams& params) {
  validate(params);
  const double half = 0.5 * params.omega;
  const double coupling = -params.mu * params.field;
  CMatrix f(2, 2);
  f << half, coupling, coupling, -half;
  return HermitianMatrix(std::move(f));
}

UnitaryMatrix factorized_propagator(const SpinParams& params, double t) {
  const UnitaryMatrix frame = quantum::expm_hermitian(quantum::sigma_z() * (-0.5 * params.omega), t);
  const UnitaryMatrix body = quantum::expm_hermitian(spin_floquet_generator(params), t);
  return UnitaryMatrix(frame.matrix() * body.matrix(), 0.0, t);
}

double verify_factorization(const SpinParams& params, const std::vector<double>& t_grid,
                            int n_steps_per_period, quantum::Integrator integrator) {
  validate(params);
  if (n_steps_per_period < 1) {
    throw std::invalid_argument("verify_factorization: n_steps_per_period must be at least 1");
  }
  const auto h = lab_hamiltonian(params);
  double worst = 0.0;
  for (double t : t_grid) {
    const int n = std::max(1, static_cast<int>(std::ceil(n_steps_per_period * std::abs(t) /
                                                         params.period() - 1e-9)));
    const UnitaryMatrix direct = quantum::evolve(h, 0.0, t, n, integrator);
    worst = std::max(worst, quantum::max_abs_diff(direct.matrix(),
                                                  factorized_propagator(params, t).matrix()));
  }
  return worst;
}

double spin_quasienergy_spacing(const SpinParams& params) {
  validate(params);
  const double x = 2.0 * params.mu * params.field / params.omega;
  // sqrt(1 + x^2) - 1 written without cancellation for small x.
  return params.omega * x * x / (std::sqrt(1.0 + x * x) + 1.0);
}

double spin_zone_gap(const SpinParams& params, int n_steps_per_period) {
  validate(params);
  const int n = n_steps_per_period > 0 ? n_steps_per_period : auto_steps(params);
  const UnitaryMatrix u =
      quantum::evolve(lab_hamiltonian(params), 0.0, params.period(), n, quantum::Integrator::magnus4);
  const quantum::QuasiSpectrum qs = quantum::quasienergies(u, params.period());
  return zone_distance(qs.values[0], qs.values[1], qs.omega);
}

double spin_spacing_from_propagator(const SpinParams& params, int n_steps_per_period) {
  validate(params);
  const double omega = params.omega;
  const double gap = spin_zone_gap(params, n_steps_per_period);

  // Short probe: F has norm at most |mu B| + w/2, so over t_probe its spectrum
  // lies well inside the principal zone (-pi/t_probe, pi/t_probe].
  const double bound = std::abs(params.mu * params.field) + 0.5 * omega;
  const double t_probe = std::min(params.period(), 0.5 * kPi / bound);
  const UnitaryMatrix lab =
      quantum::evolve(lab_hamiltonian(params), 0.0, t_probe, 256, quantum::Integrator::magnus4);
  const UnitaryMatrix unframe =
      quantum::expm_hermitian(quantum::sigma_z() * (0.5 * omega), t_probe);
  const UnitaryMatrix body(unframe.matrix() * lab.matrix(), 0.0, t_probe);
  const std::vector<double> levels = quantum::floquet_hamiltonian(body, t_probe).eigenvalues();
  const double estimate = (levels.back() - levels.front()) - omega;

  // The spacing is congruent to +-gap modulo omega; pick the representative
  // closest to the probe estimate.
  double best = gap;
  double best_err = INFINITY;
  for (double sign : {1.0, -1.0}) {
    const double base = sign * gap;
    const double k = std::round((estimate - base) / omega);
    const double candidate = k * omega + base;
    if (std::abs(candidate - estimate) < best_err) {
      best_err = std::abs(candidate - estimate);
      best = candidate;
    }
  }
  return best;
}

}  // namespace floquet::spin
