#include "doctest.h"

#include "floquet/propagator.hpp"
#include "floquet/zone.hpp"

#include <cmath>
#include <random>

using namespace floquet;
using namespace floquet::quantum;

namespace {

constexpr Complex kI{0.0, 1.0};

HermitianMatrix random_hermitian(std::mt19937& rng, int dim, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  return HermitianMatrix(0.5 * (a + a.adjoint()));
}

CMatrix pauli_x() { return sigma_x().matrix(); }
CMatrix pauli_y() { return sigma_y().matrix(); }
CMatrix pauli_z() { return sigma_z().matrix(); }

}  // namespace

TEST_CASE("HermitianMatrix rejects non-self-adjoint input") {
  CMatrix m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(HermitianMatrix{m}, std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix{CMatrix(2, 3)}, std::invalid_argument);
}

TEST_CASE("expm_hermitian closed cases") {
  SUBCASE("zero generator gives identity") {
    for (int dim : {1, 2, 5}) {
      const auto u = expm_hermitian(HermitianMatrix::zero(dim), 7.3);
      CHECK(max_abs_diff(u.matrix(), CMatrix::Identity(dim, dim)) < 1e-15);
    }
  }
  SUBCASE("sigma_z over pi is minus identity") {
    const auto u = expm_hermitian(sigma_z(), kPi);
    CHECK(max_abs_diff(u.matrix(), -CMatrix::Identity(2, 2)) < 1e-15);
  }
  SUBCASE("sigma_x over pi/2 is -i sigma_x") {
    const auto u = expm_hermitian(sigma_x(), kPi / 2);
    CHECK(max_abs_diff(u.matrix(), -kI * pauli_x()) < 1e-15);
  }
  SUBCASE("general dimension path agrees with 2x2 closed form embedded in 3x3") {
    CMatrix h3 = CMatrix::Zero(3, 3);
    h3.topLeftCorner(2, 2) = 0.7 * pauli_x() + 0.3 * pauli_y() - 1.1 * pauli_z();
    h3(2, 2) = 0.4;
    const auto u3 = expm_hermitian(HermitianMatrix(h3), 1.9);
    const auto u2 = expm_hermitian(HermitianMatrix(CMatrix(h3.topLeftCorner(2, 2))), 1.9);
    CHECK(max_abs_diff(u3.matrix().topLeftCorner(2, 2), u2.matrix()) < 1e-13);
    CHECK(std::abs(u3.matrix()(2, 2) - std::exp(-kI * 0.4 * 1.9)) < 1e-14);
  }
}

TEST_CASE("step_propagator ordering and errors") {
  SUBCASE("single step equals expm") {
    const auto h = sigma_x() * 0.8 + sigma_z() * 0.2;
    const StepPattern p({{h, 1.3}});
    CHECK(max_abs_diff(step_propagator(p).matrix(), expm_hermitian(h, 1.3).matrix()) < 1e-15);
  }
  SUBCASE("commuting steps add") {
    const StepPattern p({{sigma_z(), 1.0}, {sigma_z(), 2.0}});
    CHECK(max_abs_diff(step_propagator(p).matrix(), expm_hermitian(sigma_z(), 3.0).matrix()) < 1e-14);
  }
  SUBCASE("sigma_x then sigma_z gives -i sigma_y") {
    // direct product oracle: (-i sz)(-i sx) = -sz sx = -i sy
    const CMatrix expected = (-kI * pauli_z()) * (-kI * pauli_x());
    CHECK(max_abs_diff(expected, -kI * pauli_y()) < 1e-15);
    const StepPattern p({{sigma_x(), kPi / 2}, {sigma_z(), kPi / 2}});
    CHECK(max_abs_diff(step_propagator(p).matrix(), expected) < 1e-14);
  }
  SUBCASE("invalid patterns") {
    CHECK_THROWS_AS(StepPattern({{sigma_x(), 1.0}, {HermitianMatrix::zero(3), 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StepPattern({{sigma_x(), 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(StepPattern({}), std::invalid_argument);
  }
}

TEST_CASE("step_evolve splits the straddling step") {
  const StepPattern p({{sigma_x(), 0.4}, {sigma_z(), 0.6}});
  // t = 1.7: one full period, then 0.4 of sigma_x and 0.3 of sigma_z
  const CMatrix expected = expm_hermitian(sigma_z(), 0.3).matrix() *
                           expm_hermitian(sigma_x(), 0.4).matrix() * step_propagator(p).matrix();
  CHECK(max_abs_diff(step_evolve(p, 1.7).matrix(), expected) < 1e-14);
  CHECK(max_abs_diff(step_evolve(p, 0.0).matrix(), CMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("evolve") {
  SUBCASE("constant Hamiltonian is exact for any step count") {
    const TimeDependentHamiltonian h = [](double) { return sigma_z(); };
    for (int n : {1, 7, 64}) {
      CHECK(max_abs_diff(evolve(h, 1.0, n).matrix(), expm_hermitian(sigma_z(), 1.0).matrix()) < 1e-13);
    }
  }
  SUBCASE("zero-average commuting drive returns identity") {
    const TimeDependentHamiltonian h = [](double t) { return sigma_z() * std::sin(kTwoPi * t); };
    CHECK(max_abs_diff(evolve(h, 1.0, 100).matrix(), CMatrix::Identity(2, 2)) < 1e-13);
  }
  SUBCASE("midpoint integrator is second order (Richardson ratio)") {
    const TimeDependentHamiltonian h = [](double t) {
      return sigma_x() + sigma_z() * std::sin(kTwoPi * t);
    };
    const CMatrix u1 = evolve(h, 1.0, 1024).matrix();
    const CMatrix u2 = evolve(h, 1.0, 2048).matrix();
    const CMatrix u4 = evolve(h, 1.0, 4096).matrix();
    const double ratio = (u1 - u2).norm() / (u2 - u4).norm();
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
  }
  SUBCASE("Magnus-4 integrator is fourth order") {
    const TimeDependentHamiltonian h = [](double t) {
      return sigma_x() * 3.0 + sigma_z() * 2.0 * std::sin(kTwoPi * t);
    };
    const CMatrix u1 = evolve(h, 1.0, 64, Integrator::magnus4).matrix();
    const CMatrix u2 = evolve(h, 1.0, 128, Integrator::magnus4).matrix();
    const CMatrix u4 = evolve(h, 1.0, 256, Integrator::magnus4).matrix();
    const double ratio = (u1 - u2).norm() / (u2 - u4).norm();
    CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
    const CMatrix reference = evolve(h, 1.0, 1 << 16).matrix();
    CHECK(max_abs_diff(u4, reference) < 1e-7);
  }
  SUBCASE("zero steps rejected") {
    const TimeDependentHamiltonian h = [](double) { return sigma_z(); };
    CHECK_THROWS_AS(evolve(h, 1.0, 0), std::invalid_argument);
  }
}

TEST_CASE("floquet_hamiltonian branch convention") {
  SUBCASE("identity gives zero") {
    const auto f = floquet_hamiltonian(UnitaryMatrix::identity(3), 1.0);
    CHECK(f.matrix().cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("minus identity sits on the closed zone edge") {
    const auto u = UnitaryMatrix(-CMatrix::Identity(2, 2), 0.0, 1.0);
    const auto f = floquet_hamiltonian(u, 1.0);
    CHECK(max_abs_diff(f.matrix(), kPi * CMatrix::Identity(2, 2)) < 1e-12);
    const auto qs = quasienergies(u, 1.0);
    CHECK(qs.values[0] == doctest::Approx(kPi));
    CHECK(qs.values[1] == doctest::Approx(kPi));
  }
  SUBCASE("diagonal phases") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = std::exp(-0.3 * kI);
    d(1, 1) = std::exp(0.3 * kI);
    const auto f = floquet_hamiltonian(UnitaryMatrix(d, 0.0, 1.0), 1.0);
    CHECK(f.matrix()(0, 0).real() == doctest::Approx(0.3));
    CHECK(f.matrix()(1, 1).real() == doctest::Approx(-0.3));
    CHECK(std::abs(f.matrix()(0, 1)) < 1e-15);
  }
  SUBCASE("degenerate unitary keeps a shared phase") {
    std::mt19937 rng(11);
    const auto h = random_hermitian(rng, 4);
    const CMatrix v = expm_hermitian(h, 1.0).matrix();  // random unitary basis
    CMatrix d = CMatrix::Zero(4, 4);
    d.diagonal() << std::exp(-0.5 * kI), std::exp(-0.5 * kI), std::exp(1.2 * kI), std::exp(1.2 * kI);
    const UnitaryMatrix u(v * d * v.adjoint(), 0.0, 1.0);
    const auto qs = quasienergies(u, 1.0);
    CHECK(qs.values[0] == doctest::Approx(-1.2).epsilon(1e-12));
    CHECK(qs.values[1] == doctest::Approx(-1.2).epsilon(1e-12));
    CHECK(qs.values[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(qs.values[3] == doctest::Approx(0.5).epsilon(1e-12));
    const auto f = floquet_hamiltonian(u, 1.0);
    CHECK(max_abs_diff(expm_hermitian(f, 1.0).matrix(), u.matrix()) < 1e-12);
  }
}

TEST_CASE("quasienergies examples") {
  SUBCASE("identity over T = 2") {
    const auto qs = quasienergies(UnitaryMatrix::identity(3), 2.0);
    for (double v : qs.values) CHECK(v == doctest::Approx(0.0));
    CHECK(qs.omega == doctest::Approx(kPi));
  }
  SUBCASE("commuting steps reduce the averaged spectrum to the zone") {
    // F = (1 sz + 3 sz) / 2 = 2 sz; omega = pi; +-2 -> -+(pi - 2)
    const StepPattern p({{sigma_z(), 1.0}, {sigma_z() * 3.0, 1.0}});
    const auto qs = quasienergies(step_propagator(p), p.period());
    REQUIRE(qs.values.size() == 2);
    CHECK(qs.values[0] == doctest::Approx(-(kPi - 2.0)).epsilon(1e-12));
    CHECK(qs.values[1] == doctest::Approx(kPi - 2.0).epsilon(1e-12));
  }
}

TEST_CASE("property: unitarity, zone membership and branch reproduction on random patterns") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dur(0.05, 2.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + trial % 4;
    std::vector<StepPattern::Step> steps;
    const int n_steps = 1 + trial % 3;
    for (int i = 0; i < n_steps; ++i) steps.push_back({random_hermitian(rng, dim, 2.0), dur(rng)});
    const StepPattern p(std::move(steps));
    const auto u = step_propagator(p);
    CHECK(u.unitarity_defect() < 1e-10);
    const auto f = floquet_hamiltonian(u, p.period());
    const double half = 0.5 * p.omega();
    for (double v : f.eigenvalues()) {
      CHECK(v > -half);
      CHECK(v <= half + 1e-12);
    }
    CHECK(max_abs_diff(expm_hermitian(f, p.period()).matrix(), u.matrix()) < 1e-10);
  }
}

TEST_CASE("property: commuting-BCH spectrum") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  std::uniform_real_distribution<double> dur(0.1, 1.5);
  for (int trial = 0; trial < 25; ++trial) {
    // Steps that are functions of one Hermitian matrix commute pairwise.
    const auto base = random_hermitian(rng, 3);
    const auto base2 = HermitianMatrix(base.matrix() * base.matrix());
    std::vector<StepPattern::Step> steps;
    CMatrix weighted = CMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i) {
      const auto h = base * coef(rng) + base2 * coef(rng);
      const double tau = dur(rng);
      weighted += tau * h.matrix();
      steps.push_back({h, tau});
    }
    const StepPattern p(std::move(steps));
    const auto qs = quasienergies(step_propagator(p), p.period());
    auto expected = HermitianMatrix(weighted / p.period()).eigenvalues();
    for (double& e : expected) e = reduce_to_zone(e, p.omega());
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(zone_distance(qs.values[i], expected[i], p.omega()) < 1e-10);
    }
  }
}

TEST_CASE("property: Zeeman-like terms cancel over a period") {
  // H(t) = H0 - b(t) M with [H0, M] = 0 and zero-average b.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h0 = random_hermitian(rng, 3);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(h0.matrix());
    const CMatrix& v = eig.eigenvectors();
    Eigen::VectorXcd md(3);
    md << -1.0, 0.0, 1.0;  // magnetic quantum numbers in the H0 eigenbasis
    const HermitianMatrix moment(v * md.asDiagonal() * v.adjoint());
    const double amp = 0.5 + trial;
    const TimeDependentHamiltonian h = [&](double t) {
      return h0 + moment * (-amp * (std::sin(kTwoPi * t) + 0.3 * std::cos(2 * kTwoPi * t)));
    };
    const auto u = evolve(h, 1.0, kDefaultStepsPerPeriod);
    CHECK(max_abs_diff(u.matrix(), expm_hermitian(h0, 1.0).matrix()) < 1e-10);
  }
}

TEST_CASE("property: composition over half periods") {
  const TimeDependentHamiltonian h = [](double t) {
    return sigma_x() * 0.7 + sigma_z() * (1.0 + std::cos(kTwoPi * t)) + sigma_y() * std::sin(3 * t);
  };
  const auto whole = evolve(h, 0.0, 1.0, 4096);
  const auto first = evolve(h, 0.0, 0.5, 2048);
  const auto second = evolve(h, 0.5, 1.0, 2048);
  const auto composed = second * first;
  CHECK(max_abs_diff(whole.matrix(), composed.matrix()) < 1e-9);
  CHECK(composed.t_start() == 0.0);
  CHECK(composed.t_end() == 1.0);
}

TEST_CASE("epicycle factor") {
  const double period = 1.0;
  const TimeDependentHamiltonian h = [](double t) {
    return sigma_x() + sigma_z() * (2.2 * std::sin(kTwoPi * t));
  };
  const auto f = floquet_hamiltonian(evolve(h, period, 4096), period);
  SUBCASE("identity at t = 0") {
    CHECK(max_abs_diff(epicycle(h, f, 0.0, period).matrix(), CMatrix::Identity(2, 2)) < 1e-14);
  }
  SUBCASE("closes at whole periods") {
    for (int n = 1; n <= 3; ++n) {
      CHECK(max_abs_diff(epicycle(h, f, n * period, period).matrix(), CMatrix::Identity(2, 2)) < 1e-8);
    }
  }
  SUBCASE("does not close in between") {
    CHECK(max_abs_diff(epicycle(h, f, 0.37, period).matrix(), CMatrix::Identity(2, 2)) > 1e-3);
  }
  SUBCASE("constant Hamiltonian has trivial epicycle") {
    const TimeDependentHamiltonian hc = [](double) { return sigma_x() * 0.4 + sigma_z() * 0.3; };
    const auto fc = sigma_x() * 0.4 + sigma_z() * 0.3;
    for (double t : {0.1, 0.77, 2.5}) {
      CHECK(max_abs_diff(epicycle(hc, fc, t, period).matrix(), CMatrix::Identity(2, 2)) < 1e-12);
    }
  }
  SUBCASE("step pattern epicycle is exact") {
    const StepPattern p({{sigma_x() * 2.0, 0.5}, {sigma_z() * 1.5, 0.5}});
    const auto fp = floquet_hamiltonian(step_propagator(p), p.period());
    for (int n = 1; n <= 3; ++n) {
      CHECK(max_abs_diff(epicycle(p, fp, n * p.period()).matrix(), CMatrix::Identity(2, 2)) < 1e-12);
    }
  }
}

TEST_CASE("instantaneous spectrum") {
  CHECK(instantaneous_spectrum(sigma_z()) == std::vector<double>{-1.0, 1.0});
  CHECK(instantaneous_spectrum(HermitianMatrix::diagonal({5.0}))[0] == doctest::Approx(5.0));
  CMatrix m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;  // (1 - l)^2 = 4  ->  l = -1, 3
  const auto ev = instantaneous_spectrum(HermitianMatrix(m));
  CHECK(ev[0] == doctest::Approx(-1.0));
  CHECK(ev[1] == doctest::Approx(3.0));
  CMatrix bad(2, 2);
  bad << 1.0, 2.0, 3.0, 1.0;
  CHECK_THROWS_AS(instantaneous_spectrum(HermitianMatrix(bad)), std::invalid_argument);
}

TEST_CASE("two-step magnetic pattern: instantaneous vs Floquet lines") {
  // Level splittings w1 = 1, w2 = 3 in alternating lapses of 1.
  const StepPattern p({{sigma_z() * 0.5, 1.0}, {sigma_z() * 1.5, 1.0}});
  CHECK(transition_lines(instantaneous_spectrum(p.steps()[0].hamiltonian))[0] == doctest::Approx(1.0));
  CHECK(transition_lines(instantaneous_spectrum(p.steps()[1].hamiltonian))[0] == doctest::Approx(3.0));
  // Floquet generator = average = sz, splitting 2, folded into [0, pi/2] -> pi - 2
  const auto lines = floquet_lines(quasienergies(step_propagator(p), p.period()));
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] == doctest::Approx(kPi - 2.0));
}
