#include "doctest.h"

#include "floquet/field_models.hpp"
#include "floquet/zone.hpp"

#include <cmath>

using namespace floquet;
using namespace floquet::fields;

namespace {

const TrapField kField(2.0, 3.0, 5.0);  // k = 0.6

TrapField tilted_field() {
  const Eigen::Matrix3d r =
      (Eigen::AngleAxisd(0.4, Vec3(1, 2, 3).normalized()) * Eigen::AngleAxisd(1.1, Vec3::UnitZ()))
          .toRotationMatrix();
  return {1.5, 2.0, 3.0, r.col(0), r.col(1), r.col(2)};
}

}  // namespace

TEST_CASE("TrapField validation") {
  CHECK_THROWS_AS(TrapField(1.0, 1.0, 1.0, Vec3(1, 1, 0), Vec3::UnitY(), Vec3::UnitZ()),
                  std::invalid_argument);
  CHECK_THROWS_AS(TrapField(1.0, 1.0, 1.0, Vec3::UnitX(), Vec3::UnitX(), Vec3::UnitZ()),
                  std::invalid_argument);
  CHECK_THROWS_AS(TrapField(1.0, -1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(tilted_field());
}

TEST_CASE("standing wave potential") {
  const TrapField f = tilted_field();
  SUBCASE("vanishes on the nodal line") {
    for (double a : {-3.0, 0.2, 7.0}) {
      CHECK(vector_potential_standing(f, a * f.s(), 0.3).norm() < 1e-15);
    }
  }
  SUBCASE("vanishes at t = 0") {
    CHECK(vector_potential_standing(f, Vec3(0.3, -0.2, 0.9), 0.0).norm() == 0.0);
  }
  SUBCASE("antisymmetric under m <-> n") {
    const Vec3 x(0.4, 1.2, -0.7);
    CHECK((vector_potential_standing(f, x, 0.7) + vector_potential_standing(f.swapped_mn(), x, 0.7))
              .norm() < 1e-14);
  }
}

TEST_CASE("rotating potential") {
  const TrapField f = tilted_field();
  SUBCASE("zero at the nodal point for all t") {
    for (double t : {0.0, 0.4, 2.2}) CHECK(vector_potential_rotating(f, Vec3::Zero(), t).norm() == 0.0);
  }
  SUBCASE("t = 0 keeps only the cosine wave") {
    const Vec3 x(0.3, -0.5, 0.8);
    CHECK((vector_potential_rotating(f, x, 0.0) - standing_profile(f, f.s(), f.n(), x)).norm() < 1e-15);
  }
  SUBCASE("node field rotates in the m-s plane") {
    const double k = f.wavenumber();
    CHECK((rotating_node_field(f, 0.0) - f.amplitude() * k * f.m()).norm() < 1e-14);
    const double quarter = 0.25 * kTwoPi / f.omega();
    CHECK((rotating_node_field(f, quarter) - f.amplitude() * k * f.s()).norm() < 1e-14);
  }
  SUBCASE("local limit B(t) × x / 2 with cubic remainder") {
    for (double r : {1e-2, 1e-3}) {
      const Vec3 x = r * Vec3(0.3, -0.8, 0.52).normalized();
      const double t = 0.37;
      const double err = (vector_potential_rotating(f, x, t) - 0.5 * rotating_node_field(f, t).cross(x)).norm();
      const double k = f.wavenumber();
      // sin(u) = u - u^3/6 + ...: each of the four terms is off by at most (A/2)(k r)^3 / 6
      CHECK(err <= 4.0 * 0.5 * std::abs(f.amplitude()) * std::pow(k * r, 3) / 6.0 + 1e-16);
    }
  }
}

TEST_CASE("printed phase pairing has a different node field") {
  const TrapField f = kField;
  const double k = f.wavenumber();
  CHECK((printed_node_field(f, 0.0) + f.amplitude() * k * f.s()).norm() < 1e-14);
  const double quarter = 0.25 * kTwoPi / f.omega();
  CHECK((printed_node_field(f, quarter) - f.amplitude() * k * f.m()).norm() < 1e-14);
  const auto potential = [&f](const Vec3& x, double t) { return vector_potential_rotating_printed(f, x, t); };
  CHECK((magnetic_field_fd(potential, Vec3::Zero(), 0.3, 1e-4) - printed_node_field(f, 0.3)).norm() < 1e-8);
}

TEST_CASE("magnetic_field_fd") {
  SUBCASE("exact for a uniform field") {
    const Vec3 b0(0.3, -1.2, 2.5);
    const auto uniform = [&b0](const Vec3& x, double) { return Vec3(0.5 * b0.cross(x)); };
    CHECK((magnetic_field_fd(uniform, Vec3(1.0, 2.0, -3.0), 0.0, 0.1) - b0).norm() < 1e-10);
    const auto flipped = [&b0](const Vec3& x, double) { return Vec3(0.5 * x.cross(b0)); };
    CHECK((magnetic_field_fd(flipped, Vec3::Zero(), 0.0, 0.1) + b0).norm() < 1e-10);
  }
  SUBCASE("node field of the rotating trap") {
    const TrapField f = tilted_field();
    const auto potential = [&f](const Vec3& x, double t) { return vector_potential_rotating(f, x, t); };
    for (double t : {0.0, 0.5, 1.3}) {
      CHECK((magnetic_field_fd(potential, Vec3::Zero(), t, 1e-3) - rotating_node_field(f, t)).norm() < 1e-6);
    }
  }
  SUBCASE("second-order convergence") {
    const TrapField f = kField;
    const auto potential = [&f](const Vec3& x, double t) { return vector_potential_rotating(f, x, t); };
    const Vec3 x(0.7, -0.4, 0.9);
    const Vec3 ref = magnetic_field_fd(potential, x, 0.6, 1e-5);
    const double e1 = (magnetic_field_fd(potential, x, 0.6, 0.08) - ref).norm();
    const double e2 = (magnetic_field_fd(potential, x, 0.6, 0.04) - ref).norm();
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  }
  CHECK_THROWS_AS(magnetic_field_fd([](const Vec3&, double) { return Vec3::Zero(); }, Vec3::Zero(), 0.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("nodal_approx_error") {
  const TrapField f = kField;
  const std::vector<double> times = {0.0, 0.2, 0.5, 0.9, 1.4};
  const double scale = f.light_speed() / f.omega();
  CHECK(nodal_approx_error(f, 0.0, times) == 0.0);
  const double small = nodal_approx_error(f, 1e-3 * scale, times);
  CHECK(small < 1e-5);
  const double e1 = nodal_approx_error(f, 1e-2 * scale, times);
  const double e4 = nodal_approx_error(f, 4e-2 * scale, times);
  CHECK(e4 / e1 >= 10.0);
  CHECK(e4 / e1 <= 22.0);
}
