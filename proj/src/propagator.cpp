#include "floquet/propagator.hpp"

#include "floquet/zone.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace floquet::quantum {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square and non-empty");
  }
}

// Closed form for the 2x2 case: H = a0 + r (n . sigma).
CMatrix expm_2x2(const CMatrix& h, double t) {
  const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double z = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double r = std::sqrt(z * z + std::norm(h(0, 1)));
  const double sinc = r * std::abs(t) > 1e-300 ? std::sin(r * t) / r : t;
  CMatrix traceless = h;
  traceless(0, 0) -= a0;
  traceless(1, 1) -= a0;
  CMatrix out = CMatrix::Identity(2, 2) * std::cos(r * t) - kI * sinc * traceless;
  return out * std::exp(-kI * a0 * t);
}

CMatrix expm_matrix(const CMatrix& h, double t) {
  if (h.rows() == 2) return expm_2x2(h, t);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("expm_hermitian: eigendecomposition failed");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  Eigen::VectorXcd phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(-kI * w(i) * t);
  const CMatrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

std::vector<double> merged_sorted(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  for (double v : values) {
    if (v <= tol) continue;
    if (!out.empty() && v - out.back() <= tol) continue;
    out.push_back(v);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(CMatrix entries, double tolerance) : entries_(std::move(entries)) {
  require_square(entries_, "HermitianMatrix");
  const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (!(defect <= tolerance)) {
    throw std::invalid_argument("HermitianMatrix: not self-adjoint (defect " +
                                std::to_string(defect) + ")");
  }
  // Symmetrize so that downstream eigensolvers see an exactly Hermitian matrix.
  entries_ = 0.5 * (entries_ + entries_.adjoint()).eval();
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index dim) {
  return HermitianMatrix(CMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& values) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(values.size()),
                            static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  }
  return HermitianMatrix(std::move(m));
}

std::vector<double> HermitianMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& w = solver.eigenvalues();
  return {w.data(), w.data() + w.size()};
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  if (other.dim() != dim()) throw std::invalid_argument("HermitianMatrix: dimension mismatch");
  return HermitianMatrix(entries_ + other.entries_);
}

HermitianMatrix HermitianMatrix::operator*(double scale) const {
  return HermitianMatrix(entries_ * scale);
}

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(CMatrix entries, double t_start, double t_end, double tolerance)
    : entries_(std::move(entries)), t_start_(t_start), t_end_(t_end) {
  require_square(entries_, "UnitaryMatrix");
  const double defect = unitarity_defect();
  if (!(defect < tolerance)) {
    throw std::invalid_argument("UnitaryMatrix: not unitary (defect " + std::to_string(defect) +
                                ")");
  }
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim, double t) {
  return UnitaryMatrix(CMatrix::Identity(dim, dim), t, t);
}

double UnitaryMatrix::unitarity_defect() const {
  const CMatrix gram = entries_.adjoint() * entries_;
  return (gram - CMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

UnitaryMatrix operator*(const UnitaryMatrix& later, const UnitaryMatrix& earlier) {
  if (later.dim() != earlier.dim()) {
    throw std::invalid_argument("UnitaryMatrix: dimension mismatch in composition");
  }
  return UnitaryMatrix(later.entries_ * earlier.entries_, earlier.t_start_, later.t_end_);
}

// ---------------------------------------------------------------------------
// StepPattern

StepPattern::StepPattern(std::vector<Step> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw std::invalid_argument("StepPattern: no steps");
  const Eigen::Index dim = steps_.front().hamiltonian.dim();
  for (const auto& s : steps_) {
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
      throw std::invalid_argument("StepPattern: step durations must be positive and finite");
    }
    if (s.hamiltonian.dim() != dim) {
      throw std::invalid_argument("StepPattern: dimension mismatch among steps");
    }
    period_ += s.duration;
  }
}

double StepPattern::omega() const { return kTwoPi / period_; }

const HermitianMatrix& StepPattern::at(double t) const {
  double local = std::fmod(t, period_);
  if (local < 0.0) local += period_;
  for (const auto& s : steps_) {
    if (local < s.duration) return s.hamiltonian;
    local -= s.duration;
  }
  return steps_.back().hamiltonian;
}

// ---------------------------------------------------------------------------
// Propagators

UnitaryMatrix expm_hermitian(const HermitianMatrix& h, double t) {
  if (!std::isfinite(t)) throw std::invalid_argument("expm_hermitian: non-finite time");
  return UnitaryMatrix(expm_matrix(h.matrix(), t), 0.0, t);
}

UnitaryMatrix step_propagator(const StepPattern& pattern) {
  CMatrix u = CMatrix::Identity(pattern.dim(), pattern.dim());
  for (const auto& s : pattern.steps()) u = expm_matrix(s.hamiltonian.matrix(), s.duration) * u;
  return UnitaryMatrix(std::move(u), 0.0, pattern.period());
}

UnitaryMatrix step_evolve(const StepPattern& pattern, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("step_evolve: time must be finite and non-negative");
  }
  const double period = pattern.period();
  const auto full = static_cast<long long>(std::floor(t / period));
  double remainder = t - static_cast<double>(full) * period;
  if (remainder < 1e-14 * period) remainder = 0.0;

  const CMatrix one_period = step_propagator(pattern).matrix();
  CMatrix u = CMatrix::Identity(pattern.dim(), pattern.dim());
  for (long long n = 0; n < full; ++n) u = one_period * u;
  for (const auto& s : pattern.steps()) {
    if (remainder <= 0.0) break;
    const double dt = std::min(s.duration, remainder);
    u = expm_matrix(s.hamiltonian.matrix(), dt) * u;
    remainder -= dt;
  }
  return UnitaryMatrix(std::move(u), 0.0, t);
}

UnitaryMatrix evolve(const TimeDependentHamiltonian& h, double t0, double t1, int n_steps,
                     Integrator integrator) {
  if (n_steps < 1) throw std::invalid_argument("evolve: n_steps must be at least 1");
  if (!std::isfinite(t0) || !std::isfinite(t1)) {
    throw std::invalid_argument("evolve: non-finite time bounds");
  }
  const double dt = (t1 - t0) / n_steps;
  const Eigen::Index dim = h(t0).dim();
  CMatrix u = CMatrix::Identity(dim, dim);

  // Gauss-Legendre nodes on [0, 1].
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double commutator_weight = std::sqrt(3.0) * dt / 12.0;

  for (int k = 0; k < n_steps; ++k) {
    const double t = t0 + k * dt;
    if (integrator == Integrator::midpoint) {
      u = expm_matrix(h(t + 0.5 * dt).matrix(), dt) * u;
    } else {
      const HermitianMatrix h1 = h(t + c1 * dt);
      const HermitianMatrix h2 = h(t + c2 * dt);
      const CMatrix& a = h1.matrix();
      const CMatrix& b = h2.matrix();
      const CMatrix k_eff = 0.5 * (a + b) + kI * commutator_weight * (a * b - b * a);
      u = expm_matrix(k_eff, dt) * u;
    }
  }
  return UnitaryMatrix(std::move(u), t0, t1);
}

HermitianMatrix floquet_hamiltonian(const UnitaryMatrix& u, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("floquet_hamiltonian: period must be positive");
  const double omega = kTwoPi / period;
  // A unitary matrix is normal, so its complex Schur form is diagonal up to roundoff
  // and the Schur vectors form an orthonormal eigenbasis, degenerate blocks included.
  Eigen::ComplexSchur<CMatrix> schur(u.matrix());
  const CMatrix& q = schur.matrixU();
  const CMatrix& tri = schur.matrixT();
  Eigen::VectorXcd levels(u.dim());
  for (Eigen::Index i = 0; i < u.dim(); ++i) {
    const double phase = std::arg(tri(i, i));
    levels(i) = reduce_to_zone(-phase / period, omega);
  }
  return HermitianMatrix(q * levels.asDiagonal() * q.adjoint(), 1e-9);
}

QuasiSpectrum quasienergies(const UnitaryMatrix& u, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("quasienergies: period must be positive");
  const double omega = kTwoPi / period;
  // Eigenvalues are taken from the Schur diagonal directly; re-diagonalizing F would
  // perturb values sitting on the closed zone edge.
  Eigen::ComplexSchur<CMatrix> schur(u.matrix(), false);
  QuasiSpectrum out;
  out.omega = omega;
  for (Eigen::Index i = 0; i < u.dim(); ++i) {
    out.values.push_back(reduce_to_zone(-std::arg(schur.matrixT()(i, i)) / period, omega));
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

UnitaryMatrix epicycle(const TimeDependentHamiltonian& h, const HermitianMatrix& f, double t,
                       double period, int n_steps_per_period, Integrator integrator) {
  if (!(period > 0.0)) throw std::invalid_argument("epicycle: period must be positive");
  const int n = std::max(1, static_cast<int>(std::ceil(n_steps_per_period * t / period - 1e-9)));
  const UnitaryMatrix u = evolve(h, 0.0, t, n, integrator);
  return UnitaryMatrix(u.matrix() * expm_matrix(f.matrix(), -t), 0.0, t);
}

UnitaryMatrix epicycle(const StepPattern& pattern, const HermitianMatrix& f, double t) {
  const UnitaryMatrix u = step_evolve(pattern, t);
  return UnitaryMatrix(u.matrix() * expm_matrix(f.matrix(), -t), 0.0, t);
}

std::vector<double> instantaneous_spectrum(const HermitianMatrix& h) { return h.eigenvalues(); }

std::vector<double> transition_lines(const std::vector<double>& levels, double merge_tolerance) {
  std::vector<double> diffs;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) diffs.push_back(std::abs(levels[j] - levels[i]));
  }
  return merged_sorted(std::move(diffs), merge_tolerance);
}

std::vector<double> floquet_lines(const QuasiSpectrum& spectrum, double merge_tolerance) {
  std::vector<double> diffs;
  const auto& v = spectrum.values;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      diffs.push_back(zone_distance(v[i], v[j], spectrum.omega));
    }
  }
  return merged_sorted(std::move(diffs), merge_tolerance);
}

HermitianMatrix sigma_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return HermitianMatrix(m);
}

HermitianMatrix sigma_y() {
  CMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return HermitianMatrix(m);
}

HermitianMatrix sigma_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return HermitianMatrix(m);
}

HermitianMatrix identity_hamiltonian(Eigen::Index dim) {
  return HermitianMatrix(CMatrix::Identity(dim, dim));
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace floquet::quantum
