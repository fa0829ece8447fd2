// Independent reference computations for the tests. Nothing here calls into
// the library under test.
#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 50) {
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double a, double b, double fa, double fm, double fb, double whole, double tol,
          int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = f(lm), frm = f(rm);
        const double left = (m - a) / 6 * (fa + 4 * flm + fm);
        const double right = (b - m) / 6 * (fm + 4 * frm + fb);
        const double delta = left + right - whole;
        if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
        return rec(a, m, fa, flm, fm, left, tol / 2, depth - 1) +
               rec(m, b, fm, frm, fb, right, tol / 2, depth - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, depth);
}

// All xi in {0..k}^{m-1} with |xi| = k and xi.eta = j, by exhaustive loop.
inline std::vector<std::vector<int>> brute_multi_indices(int m, int k, int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> xi(m - 1, 0);
  while (true) {
    int order = 0, weight = 0;
    for (int i = 0; i < m - 1; ++i) {
      order += xi[i];
      weight += (i + 1) * xi[i];
    }
    if (order == k && weight == j) out.push_back(xi);
    int pos = 0;
    while (pos < m - 1 && xi[pos] == k) xi[pos++] = 0;
    if (pos == m - 1) break;
    ++xi[pos];
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Power series of sqrt(1 + w(s)) with w(s) = sum_{i>=1} w[i] s^i, via
// c_0 = 1, 2 c_n = w_n - sum_{i=1}^{n-1} c_i c_{n-i}.
inline std::vector<cplx> sqrt_series(const std::vector<cplx>& w, int terms) {
  std::vector<cplx> c(terms + 1, 0.0);
  c[0] = 1.0;
  for (int n = 1; n <= terms; ++n) {
    cplx acc = n < static_cast<int>(w.size()) ? w[n] : 0.0;
    for (int i = 1; i < n; ++i) acc -= c[i] * c[n - i];
    c[n] = acc / 2.0;
  }
  return c;
}

// Lowest eigenvalue of -u'' + x^4 u on [0, L], u(0) = u(L) = 0, by
// second-order finite differences on N interior points.
inline double quartic_fd(double L, int N) {
  const double h = L / (N + 1);
  Eigen::VectorXd diag(N), off(N - 1);
  for (int i = 0; i < N; ++i) {
    const double x = (i + 1) * h;
    diag[i] = 2.0 / (h * h) + x * x * x * x;
  }
  off.setConstant(-1.0 / (h * h));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// Richardson extrapolation of the O(h^2) scheme: (4 E(h/2) - E(h)) / 3.
inline double quartic_ground_state() {
  const double L = 7.0;
  const int N = 1500;
  const double coarse = quartic_fd(L, N);
  const double fine = quartic_fd(L, 2 * N + 1);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace oracle
