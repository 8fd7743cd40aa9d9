#include "floquet/field_models.hpp"

#include "floquet/zone.hpp"

#include <cmath>
#include <stdexcept>

namespace floquet::fields {

TrapField::TrapField(double amplitude, double omega, double light_speed, Vec3 m, Vec3 n, Vec3 s)
    : amplitude_(amplitude), omega_(omega), light_speed_(light_speed), m_(m), n_(n), s_(s) {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("TrapField: non-finite amplitude");
  if (!(omega > 0.0)) throw std::invalid_argument("TrapField: omega must be positive");
  if (!(light_speed > 0.0)) throw std::invalid_argument("TrapField: light speed must be positive");
  for (const Vec3* v : {&m_, &n_, &s_}) {
    if (std::abs(v->norm() - 1.0) > kAxisTolerance) {
      throw std::invalid_argument("TrapField: axes must be unit vectors");
    }
  }
  if (std::abs(m_.dot(n_)) > kAxisTolerance || std::abs(n_.dot(s_)) > kAxisTolerance ||
      std::abs(m_.dot(s_)) > kAxisTolerance) {
    throw std::invalid_argument("TrapField: axes must be pairwise orthogonal");
  }
}

TrapField TrapField::swapped_mn() const {
  return {amplitude_, omega_, light_speed_, n_, m_, s_};
}

Vec3 standing_profile(const TrapField& field, const Vec3& a, const Vec3& b, const Vec3& x) {
  const double k = field.wavenumber();
  return 0.5 * field.amplitude() * (a * std::sin(k * b.dot(x)) - b * std::sin(k * a.dot(x)));
}

Vec3 vector_potential_standing(const TrapField& field, const Vec3& x, double t) {
  return standing_profile(field, field.m(), field.n(), x) * std::sin(field.omega() * t);
}

Vec3 vector_potential_rotating(const TrapField& field, const Vec3& x, double t) {
  const double wt = field.omega() * t;
  return standing_profile(field, field.s(), field.n(), x) * std::cos(wt) +
         standing_profile(field, field.n(), field.m(), x) * std::sin(wt);
}

Vec3 rotating_node_field(const TrapField& field, double t) {
  const double wt = field.omega() * t;
  // curl of standing_profile(a, b) at the node is -A k (a × b); n × s = m, m × n = s.
  return field.amplitude() * field.wavenumber() *
         (field.n().cross(field.s()) * std::cos(wt) + field.m().cross(field.n()) * std::sin(wt));
}

Vec3 vector_potential_rotating_printed(const TrapField& field, const Vec3& x, double t) {
  const double wt = field.omega() * t;
  return standing_profile(field, field.m(), field.n(), x) * std::cos(wt) +
         standing_profile(field, field.s(), field.n(), x) * std::sin(wt);
}

Vec3 printed_node_field(const TrapField& field, double t) {
  const double wt = field.omega() * t;
  return field.amplitude() * field.wavenumber() *
         (field.n().cross(field.m()) * std::cos(wt) + field.n().cross(field.s()) * std::sin(wt));
}

Vec3 magnetic_field_fd(const VectorPotential& potential, const Vec3& x, double t, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("magnetic_field_fd: h must be positive");
  // jac(i, j) = dA_i / dx_j
  Eigen::Matrix3d jac;
  for (int j = 0; j < 3; ++j) {
    Vec3 dx = Vec3::Zero();
    dx(j) = h;
    jac.col(j) = (potential(x + dx, t) - potential(x - dx, t)) / (2.0 * h);
  }
  return {jac(2, 1) - jac(1, 2), jac(0, 2) - jac(2, 0), jac(1, 0) - jac(0, 1)};
}

double nodal_approx_error(const TrapField& field, double radius, const std::vector<double>& t_grid,
                          int n_directions) {
  if (!(radius > 0.0)) return 0.0;
  if (n_directions < 1) throw std::invalid_argument("nodal_approx_error: n_directions must be >= 1");
  const double scale = 0.5 * radius * std::abs(field.amplitude()) * field.wavenumber();
  if (scale == 0.0) return 0.0;
  // Fibonacci lattice on the sphere.
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  double worst = 0.0;
  for (int i = 0; i < n_directions; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n_directions;
    const double rho = std::sqrt(1.0 - z * z);
    const Vec3 x = radius * Vec3(rho * std::cos(golden * i), rho * std::sin(golden * i), z);
    for (double t : t_grid) {
      const Vec3 local = 0.5 * rotating_node_field(field, t).cross(x);
      worst = std::max(worst, (vector_potential_rotating(field, x, t) - local).norm() / scale);
    }
  }
  return worst;
}

}  // namespace floquet::fields
