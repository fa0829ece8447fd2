#include "halfline/inverse.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "halfline/error.hpp"

namespace halfline {

FitResult fit_e(const InverseProblem& ip) {
  const int m = ip.m;
  if (m < 3) throw Error(ErrorKind::input, "fit_e: m must be >= 3");
  if (ip.J < 1 || 2 * ip.J > m + 1)
    throw Error(ErrorKind::input, "fit_e: need 1 <= J <= (m+1)/2, got J=" + std::to_string(ip.J));
  auto eigs = ip.eigs;
  std::sort(eigs.begin(), eigs.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  for (std::size_t i = 1; i < eigs.size(); ++i) {
    if (eigs[i].n != eigs[i - 1].n + 1)
      throw Error(ErrorKind::input, "fit_e: eigenvalue indices must be consecutive");
  }
  const int rows = static_cast<int>(eigs.size());
  if (rows < ip.J + 3)
    throw Error(ErrorKind::input, "fit_e: window too short, need at least " +
                                      std::to_string(ip.J + 3) + " eigenvalues");

  int terms = ip.fit_terms;
  if (terms == 0) {
    // Two nuisance powers past the expansion, at most down to E0^0.
    terms = std::min(m, (m + 2) / 2 + 2);
    if (rows < terms + 3) terms = (m + 2) / 2;
    if (rows < terms + 1) terms = ip.J;
  }
  if (terms < ip.J || terms > m)
    throw Error(ErrorKind::input, "fit_e: fit_terms must lie in [J, m]");
  if (rows < terms + 1)
    throw Error(ErrorKind::input, "fit_e: window too short for " + std::to_string(terms) +
                                      " regression columns");

  Eigen::MatrixXcd A(rows, terms);
  Eigen::VectorXcd y(rows);
  for (int r = 0; r < rows; ++r) {
    const double e0 = En0(eigs[r].n, m, ip.bc);
    const double weight = ip.weighted ? std::pow(e0, static_cast<double>(ip.J) / m) : 1.0;
    y(r) = weight * (eigs[r].E - e0);
    for (int j = 1; j <= terms; ++j)
      A(r, j - 1) = weight * std::pow(e0, 1.0 - static_cast<double>(j) / m);
  }

  Eigen::VectorXd scale = A.colwise().norm().transpose();
  Eigen::MatrixXcd An = A * scale.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(An, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                                   : std::numeric_limits<double>::infinity();
  if (!(condition <= 1e12))
    throw Error(ErrorKind::ill_conditioned,
                "fit_e: design matrix condition number " + std::to_string(condition) +
                    " exceeds 1e12 (window too short or too low)");
  Eigen::VectorXcd xn = svd.solve(y);
  Eigen::VectorXcd x = scale.cwiseInverse().asDiagonal() * xn;

  FitResult fit;
  fit.condition = condition;
  const Eigen::VectorXcd residual = y - A * x;
  fit.rms_residual = residual.norm() / std::sqrt(static_cast<double>(rows));
  const int dof = std::max(1, rows - terms);
  const double sigma2 = residual.squaredNorm() / dof;
  // cov(xn) = sigma^2 V S^-2 V^H, then undo the column scaling.
  const Eigen::MatrixXcd& V = svd.matrixV();
  for (int j = 0; j < terms; ++j) {
    double var = 0.0;
    for (int k = 0; k < sv.size(); ++k) var += std::norm(V(j, k)) / (sv(k) * sv(k));
    fit.std_error.push_back(std::sqrt(sigma2 * var) / scale(j));
    fit.coefficients.push_back(x(j));
  }
  fit.e_hat.assign(fit.coefficients.begin(), fit.coefficients.begin() + ip.J);
  return fit;
}

Recovery recover_a_detailed(int m, const BoundaryCondition& bc, std::span<const cplx> e_hat) {
  (void)bc;  // e_j(a) depends on a only; the boundary enters through E_{n,0}.
  const int J = static_cast<int>(e_hat.size());
  if (m < 3) throw Error(ErrorKind::input, "recover_a: m must be >= 3");
  if (J < 1 || 2 * J > m + 1)
    throw Error(ErrorKind::range, "recover_a: need 1 <= J <= (m+1)/2, got J=" + std::to_string(J));

  Recovery out;
  std::vector<cplx> a(m - 1, cplx{0.0, 0.0});
  for (int k = 1; k <= J; ++k) {
    a[k - 1] = 0.0;
    const cplx at_zero = build_e(PotentialSpec(m, a), k)[k];
    a[k - 1] = 1.0;
    const cplx at_one = build_e(PotentialSpec(m, a), k)[k];
    const cplx slope = at_one - at_zero;
    if (std::abs(slope) <= 1e-12)
      throw Error(ErrorKind::degenerate_slope,
                  "recover_a: e_" + std::to_string(k) + " does not depend on a_" +
                      std::to_string(k));
    a[k - 1] = (e_hat[k - 1] - at_zero) / slope;
    out.slopes.push_back(slope);
    out.intercepts.push_back(at_zero);
    out.a_hat.push_back(a[k - 1]);
  }
  return out;
}

std::vector<cplx> recover_a(int m, const BoundaryCondition& bc, std::span<const cplx> e_hat) {
  return recover_a_detailed(m, bc, e_hat).a_hat;
}

}  // namespace halfline
