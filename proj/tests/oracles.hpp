#pragma once

// Test-only reference computations. They deliberately avoid the library's
// exponential integrators so they can be used as independent checks.

#include <Eigen/Dense>

#include <cmath>
#include <functional>

namespace oracle {

/// Classical RK4 for the linear system x' = A(t) x, returning the flow matrix.
template <int N>
Eigen::Matrix<double, N, N> rk4_flow(const std::function<Eigen::Matrix<double, N, N>(double)>& a,
                                     double t0, double t1, int n_steps) {
  using Mat = Eigen::Matrix<double, N, N>;
  Mat x = Mat::Identity();
  const double h = (t1 - t0) / n_steps;
  for (int k = 0; k < n_steps; ++k) {
    const double t = t0 + k * h;
    const Mat k1 = a(t) * x;
    const Mat k2 = a(t + 0.5 * h) * (x + 0.5 * h * k1);
    const Mat k3 = a(t + 0.5 * h) * (x + 0.5 * h * k2);
    const Mat k4 = a(t + h) * (x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

/// Monodromy of q'' + beta(t)^2 q = 0 by RK4.
inline Eigen::Matrix2d hill_rk4(const std::function<double(double)>& beta, double period,
                                int n_steps) {
  return rk4_flow<2>(
      [&](double t) {
        const double b = beta(t);
        Eigen::Matrix2d a;
        a << 0.0, 1.0, -b * b, 0.0;
        return a;
      },
      0.0, period, n_steps);
}

/// Plain bisection on a scalar function with a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-13) {
  double f_lo = f(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
