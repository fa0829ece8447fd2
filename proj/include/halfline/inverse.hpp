#pragma once

#include <complex>
#include <span>
#include <vector>

#include "halfline/asym.hpp"

namespace halfline {

struct EigenPoint {
  int n = 0;
  cplx E{};
};

struct InverseProblem {
  int m = 3;
  BoundaryCondition bc = BoundaryCondition::dirichlet();
  /// Eigenvalues with consecutive indices.
  std::vector<EigenPoint> eigs;
  /// Number of coefficients a_1..a_J to recover, 1 <= J <= (m+1)/2.
  int J = 1;
  /// Regression columns E_{n,0}^{1-j/m}, j = 1..fit_terms, fit_terms <= m.
  /// Zero picks min(m, floor((m+2)/2) + 2) when the window has enough
  /// points (three more than columns), else
  /// floor((m+2)/2), else J. Columns past floor((m+2)/2) are nuisance terms
  /// that soak up the unmodelled remainder of the expansion.
  int fit_terms = 0;
  /// Multiply each row by E_{n,0}^{J/m}.
  bool weighted = false;
};

struct FitResult {
  /// e_1..e_J (e_hat[0] is e_1).
  std::vector<cplx> e_hat;
  /// Every fitted coefficient, e_1..e_{fit_terms}.
  std::vector<cplx> coefficients;
  /// One-sigma standard error of each fitted coefficient from the residual.
  std::vector<double> std_error;
  /// Condition number of the column-normalized design matrix.
  double condition = 0.0;
  double rms_residual = 0.0;
};

/// Complex linear least squares of E_n - E_{n,0} on E_{n,0}^{1-j/m}.
/// Throws ill_conditioned when the condition number exceeds 1e12.
FitResult fit_e(const InverseProblem& ip);

struct Recovery {
  std::vector<cplx> a_hat;       // a_1..a_J
  std::vector<cplx> slopes;      // d e_k / d a_k
  std::vector<cplx> intercepts;  // e_k at a_k = 0
};

/// Sequential solve of e_k(a_1..a_k) = e_hat_k for a_k, k = 1..J, using that
/// e_k is affine in a_k once a_1..a_{k-1} are fixed.
Recovery recover_a_detailed(int m, const BoundaryCondition& bc, std::span<const cplx> e_hat);

std::vector<cplx> recover_a(int m, const BoundaryCondition& bc, std::span<const cplx> e_hat);

}  // namespace halfline
