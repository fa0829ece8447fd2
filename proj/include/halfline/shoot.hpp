#pragma once

#include <complex>
#include <span>
#include <vector>

#include "halfline/asym.hpp"
#include "halfline/combin.hpp"

namespace halfline {

struct ShootingProblem {
  PotentialSpec p;
  BoundaryCondition bc;
};

struct ShootingConfig {
  /// Anchor radius R. Zero selects it from lambda (see select_radius).
  double radius = 0.0;
  /// Multiplies the anchor radius, automatic or fixed.
  double radius_factor = 1.0;
  /// Minimum Re int_0^R sqrt(Q) dx at the selected anchor. The unwanted
  /// solution is suppressed by exp(-2 * margin) at x = 0.
  double decay_margin = 40.0;
  double ode_rel_tol = 1e-12;
  double ode_abs_tol = 1e-12;
  /// Newton stops once |step| <= newton_tol (1 + |E|).
  double newton_tol = 1e-11;
  int max_newton_iter = 50;
  /// Central-difference step in E, relative: h = fd_step (1 + |E|).
  double fd_step = 1e-5;
  /// Refined zeros closer than dedup_tol (1 + |E|) are the same eigenvalue.
  double dedup_tol = 1e-8;
  /// Worker cap for scan; 0 defers to HALFLINE_THREADS / hardware.
  unsigned threads = 0;
};

enum class RecordMethod { asymptotic, numeric };

struct EigenvalueRecord {
  int n = 0;
  cplx E{};
  /// Last Newton step relative to 1 + |E| (for numeric records).
  double residual = 0.0;
  /// counting_residual(model, E), to be compared with n + offset.
  cplx counting_value{};
  RecordMethod method = RecordMethod::numeric;
  int iterations = 0;
};

/// Solution data (u, u') = exp(log_scale) * (u, du).
struct ScaledPair {
  cplx u{};
  cplx du{};
  double log_scale = 0.0;
};

/// alpha u(0) + beta u'(0) = exp(log_scale) * mantissa.
struct BoundaryValue {
  cplx mantissa{};
  double log_scale = 0.0;

  cplx value() const { return mantissa * std::exp(log_scale); }
};

/// x^m + P(x) + lambda (Horner).
cplx q_eval(double x, const PotentialSpec& p, cplx lambda);

/// d/dx of q_eval.
cplx q_derivative(double x, const PotentialSpec& p);

/// Liouville-Green data of the decaying solution at x = R: u = 1,
/// u'/u = -sqrt(Q) - Q'/(4Q). Throws branch error when Q(R) is real <= 0.
ScaledPair wkb_init(const PotentialSpec& p, cplx lambda, double R);

/// Anchor radius for lambda: the first R beyond every turning point with
/// Re int_0^R sqrt(Q) >= decay_margin, times radius_factor. A positive
/// cfg.radius bypasses the search.
double select_radius(const PotentialSpec& p, cplx lambda, const ShootingConfig& cfg);

/// Integrates -u'' + Q u = 0 from x_from to x_to with an embedded
/// Runge-Kutta-Fehlberg 7(8) pair, rescaling (u, u') whenever its size leaves
/// [1e-30, 1e30] and accumulating the scale in log_scale.
ScaledPair propagate(const PotentialSpec& p, cplx lambda, double x_from, double x_to,
                     ScaledPair start, double rel_tol, double abs_tol);

/// Decaying solution at x = 0, started from wkb_init at the anchor radius.
ScaledPair integrate(const PotentialSpec& p, cplx lambda, const ShootingConfig& cfg);

/// alpha u(0) + beta u'(0) for the decaying solution at energy E (lambda = -E).
BoundaryValue boundary_fn(const ShootingProblem& prob, cplx E, const ShootingConfig& cfg);

/// Complex Newton iteration on boundary_fn with a central-difference
/// derivative. The anchor radius is fixed from the seed for the whole run.
/// The record's n and counting_value are left for the caller. If trace is
/// non-null it receives the iterate after every step.
EigenvalueRecord newton_refine(const ShootingProblem& prob, cplx E0, const ShootingConfig& cfg,
                               std::vector<cplx>* trace = nullptr);

/// Refines eval_asym_E(model, n) for n = n_lo..n_hi, infers indices by
/// rounding Re(counting_residual) - offset, removes duplicates and checks the
/// indices cover n_lo..n_hi exactly once. Result sorted by |E|.
std::vector<EigenvalueRecord> scan(const ShootingProblem& prob, const AsymptoticModel& model,
                                   int n_lo, int n_hi, const ShootingConfig& cfg);

struct NumericCount {
  int count = 0;
  /// t exceeds the largest |E| among the records.
  bool beyond_coverage = false;
};

/// Number of records with |E| <= t.
NumericCount N_numeric(std::span<const EigenvalueRecord> records, double t);

/// (1/pi) int_0^{x0} sqrt(t - x^m - P(x)) dx with x0^m + P(x0) = t, for real a
/// and x^m + P(x) increasing and convex on [0, inf).
double titchmarsh_count(const PotentialSpec& p, double t);

}  // namespace halfline
