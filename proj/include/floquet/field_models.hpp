#pragma once

// Vector potentials of laser standing-wave traps and their local field near the
// nodal set, where they reduce to the homogeneous-field model A = B(t) × x / 2.

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace floquet::fields {

using Vec3 = Eigen::Vector3d;

inline constexpr double kAxisTolerance = 1e-12;

/// Amplitude, frequency, light speed and an orthonormal triad (m, n, s).
class TrapField {
 public:
  TrapField(double amplitude, double omega, double light_speed, Vec3 m = Vec3::UnitX(),
            Vec3 n = Vec3::UnitY(), Vec3 s = Vec3::UnitZ());

  [[nodiscard]] double amplitude() const { return amplitude_; }
  [[nodiscard]] double omega() const { return omega_; }
  [[nodiscard]] double light_speed() const { return light_speed_; }
  [[nodiscard]] double wavenumber() const { return omega_ / light_speed_; }
  [[nodiscard]] const Vec3& m() const { return m_; }
  [[nodiscard]] const Vec3& n() const { return n_; }
  [[nodiscard]] const Vec3& s() const { return s_; }

  /// Same field with m and n exchanged.
  [[nodiscard]] TrapField swapped_mn() const;

 private:
  double amplitude_;
  double omega_;
  double light_speed_;
  Vec3 m_;
  Vec3 n_;
  Vec3 s_;
};

/// Standing-wave profile  (A/2) [a sin(k b.x) - b sin(k a.x)], without time factor.
Vec3 standing_profile(const TrapField& field, const Vec3& a, const Vec3& b, const Vec3& x);

/// Two crossed standing waves: (A/2)[m sin(k n.x) - n sin(k m.x)] sin(wt).
/// Vanishes on the nodal line m.x = n.x = 0.
Vec3 vector_potential_standing(const TrapField& field, const Vec3& x, double t);

/// Superposition of the (s,n) and (n,m) standing waves with a quarter-period phase
/// shift. Its nodal point x = 0 hosts the rotating field rotating_node_field().
Vec3 vector_potential_rotating(const TrapField& field, const Vec3& x, double t);

/// B(t) = (A w / c)(m cos wt + s sin wt) for a right-handed triad.
Vec3 rotating_node_field(const TrapField& field, double t);

/// The two-line superposition with the phase pairing as usually printed:
///   (A/2)[m sin(k n.x) - n sin(k m.x)] cos wt + (A/2)[s sin(k n.x) - n sin(k s.x)] sin wt.
/// For a right-handed triad its node field is (A w / c)(m sin wt - s cos wt).
Vec3 vector_potential_rotating_printed(const TrapField& field, const Vec3& x, double t);

Vec3 printed_node_field(const TrapField& field, double t);

using VectorPotential = std::function<Vec3(const Vec3&, double)>;

/// curl A by central differences with spacing h.
Vec3 magnetic_field_fd(const VectorPotential& potential, const Vec3& x, double t, double h);

/// Max over `n_directions` points on the sphere |x| = r and over t_grid of
/// |A_rot(x,t) - B(t) × x / 2| / (r A w / 2c).
double nodal_approx_error(const TrapField& field, double radius, const std::vector<double>& t_grid,
                          int n_directions = 200);

}  // namespace floquet::fields
