#pragma once

#include <complex>
#include <vector>

#include "halfline/combin.hpp"
#include "halfline/specfun.hpp"

namespace halfline {

/// alpha u(0) + beta u'(0) = 0, |alpha| + |beta| != 0.
class BoundaryCondition {
 public:
  /// Throws input error when alpha = beta = 0.
  BoundaryCondition(cplx alpha, cplx beta);

  static BoundaryCondition dirichlet() { return {1.0, 0.0}; }
  static BoundaryCondition neumann() { return {0.0, 1.0}; }

  cplx alpha() const noexcept { return alpha_; }
  cplx beta() const noexcept { return beta_; }

  /// Index offset in the counting relation: -1/4 if beta == 0, +1/4 otherwise.
  double offset() const noexcept { return beta_ == cplx(0.0, 0.0) ? -0.25 : 0.25; }

 private:
  cplx alpha_;
  cplx beta_;
};

// ---------------------------------------------------------------------------
// Constants K_{m,j,k}.
//
// Legal index ranges:
//   j = k = 0;
//   1 <= k <= j <= (m+1)/2;
//   m even and 1 <= k <= j = (m+2)/2   (logarithmic case).
// Anything else is a range error.

bool k_index_legal(int m, int j, int k) noexcept;

/// Closed form in terms of the beta function and ln 2.
double K_closed(int m, int j, int k);

/// Adaptive quadrature of the defining improper integral, |error| <= 1e-9.
double K_quad(int m, int j, int k);

/// K_{m,0} for j = 0, sum_k b_{j,k}(a) K_{m,j,k} for 1 <= j <= (m+2)/2.
cplx K_mj(const PotentialSpec& p, int j);

/// Coefficients of the counting relation:
/// cos((j-1)pi/m) K_{m,j}(a) for j <= (m+1)/2, -nu(a) pi/m for m even, j = (m+2)/2.
cplx d_j(const PotentialSpec& p, int j);

/// 2 sqrt(pi) Gamma(3/2 + 1/m) / Gamma(1 + 1/m), which equals pi / d_0.
double en0_scale(int m);

/// Leading eigenvalue term (scale * (n + offset))^{2m/(m+2)}.
double En0(int n, int m, const BoundaryCondition& bc);

/// e_0..e_depth of the eigenvalue expansion (index 0 holds e_0 = 1),
/// 1 <= depth <= floor((m+2)/2).
std::vector<cplx> build_e(const PotentialSpec& p, int depth);

/// Precomputed constants of the asymptotic theory for one (m, a, bc).
class AsymptoticModel {
 public:
  AsymptoticModel(PotentialSpec p, BoundaryCondition bc);

  const PotentialSpec& potential() const noexcept { return p_; }
  const BoundaryCondition& boundary() const noexcept { return bc_; }
  int m() const noexcept { return p_.m(); }

  /// Number of correction terms used by eval_asym_E (defaults to the maximum).
  int depth() const noexcept { return depth_; }
  /// Copy that keeps only e_1..e_depth in the eigenvalue expansion.
  AsymptoticModel truncated(int depth) const;

  /// Index j = 0 .. floor((m+2)/2) in each of the following.
  const std::vector<cplx>& K() const noexcept { return K_; }
  const std::vector<cplx>& d() const noexcept { return d_; }
  const std::vector<cplx>& e() const noexcept { return e_; }
  cplx nu() const noexcept { return nu_; }
  double en0_scale() const noexcept { return scale_; }
  double offset() const noexcept { return bc_.offset(); }

 private:
  PotentialSpec p_;
  BoundaryCondition bc_;
  std::vector<cplx> K_, d_, e_;
  cplx nu_;
  double scale_;
  int depth_;
};

/// E_{n,0} + sum_{j=1}^{depth} e_j E_{n,0}^{1-j/m}.
cplx eval_asym_E(const AsymptoticModel& model, int n);

/// (1/pi) sum_j d_j E^{1/2+(1-j)/m}; compare against n + offset.
cplx counting_residual(const AsymptoticModel& model, cplx E);

/// Analytic E-derivative of counting_residual.
cplx counting_residual_derivative(const AsymptoticModel& model, cplx E);

/// Asymptotic eigenvalue counting function. Requires Im K_{m,j}(a) = 0 for
/// j >= 1 (|Im| <= 1e-10 (1 + |K|)); otherwise a hypothesis error.
double N_asym(const AsymptoticModel& model, double t);

/// Truncated large-lambda expansion of L(a, lambda). For even m the
/// -(b_{m/2+1}/m) ln(lambda) term is included when with_log is set.
cplx L_series(const PotentialSpec& p, cplx lambda, bool with_log = true);

/// Regularized integral defining L(a, lambda), |error| <= 1e-8.
cplx L_quad(const PotentialSpec& p, cplx lambda);

}  // namespace halfline
