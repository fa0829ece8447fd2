#include "halfline/shoot.hpp"

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "halfline/error.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace halfline {

namespace odeint = boost::numeric::odeint;

cplx q_eval(double x, const PotentialSpec& p, cplx lambda) {
  cplx acc{1.0, 0.0};
  for (int j = 1; j <= p.m() - 1; ++j) acc = acc * x + p.coeff(j);
  return acc * x + lambda;
}

cplx q_derivative(double x, const PotentialSpec& p) {
  // m x^{m-1} + sum_j (m-j) a_j x^{m-j-1}
  const int m = p.m();
  cplx acc{static_cast<double>(m), 0.0};
  for (int j = 1; j <= m - 1; ++j) acc = acc * x + static_cast<double>(m - j) * p.coeff(j);
  return acc;
}

ScaledPair wkb_init(const PotentialSpec& p, cplx lambda, double R) {
  const cplx Q = q_eval(R, p, lambda);
  if (Q.imag() == 0.0 && Q.real() <= 0.0)
    throw Error(ErrorKind::branch, "wkb_init: Q(R) lies on the negative real axis, R=" +
                                       std::to_string(R));
  const cplx root = std::sqrt(Q);  // principal, Re >= 0
  return {1.0, -root - q_derivative(R, p) / (4.0 * Q), 0.0};
}

namespace {

// Fujiwara bound on |x| over the roots of x^m + P(x) + lambda.
double turning_point_bound(const PotentialSpec& p, cplx lambda) {
  const int m = p.m();
  double bound = std::pow(std::abs(lambda) / 2.0, 1.0 / m);
  for (int j = 1; j <= m - 1; ++j)
    bound = std::max(bound, std::pow(std::abs(p.coeff(j)), 1.0 / j));
  return 2.0 * bound;
}

using State = std::array<double, 4>;  // Re u, Im u, Re u', Im u'

cplx u_of(const State& s) { return {s[0], s[1]}; }
cplx du_of(const State& s) { return {s[2], s[3]}; }

}  // namespace

double select_radius(const PotentialSpec& p, cplx lambda, const ShootingConfig& cfg) {
  if (!(cfg.radius_factor > 0.0))
    throw Error(ErrorKind::input, "radius_factor must be positive");
  if (cfg.radius > 0.0) return cfg.radius * cfg.radius_factor;

  auto decay_rate = [&](double x) { return std::sqrt(q_eval(x, p, lambda)).real(); };
  double R = std::max(1.0, 1.05 * turning_point_bound(p, lambda));
  double accumulated = detail::gauss_kronrod(decay_rate, 0.0, R, 1e-8, 12).value;
  while (accumulated < cfg.decay_margin) {
    const double next = 1.1 * R;
    accumulated += detail::gauss_kronrod(decay_rate, R, next, 1e-8, 12).value;
    R = next;
  }
  return R * cfg.radius_factor;
}

ScaledPair propagate(const PotentialSpec& p, cplx lambda, double x_from, double x_to,
                     ScaledPair start, double rel_tol, double abs_tol) {
  auto system = [&](const State& s, State& ds, double x) {
    const cplx q = q_eval(x, p, lambda);
    const cplx u = u_of(s);
    const cplx qu = q * u;
    ds[0] = s[2];
    ds[1] = s[3];
    ds[2] = qu.real();
    ds[3] = qu.imag();
  };
  auto stepper = odeint::make_controlled(abs_tol, rel_tol, odeint::runge_kutta_fehlberg78<State>());

  State state{start.u.real(), start.u.imag(), start.du.real(), start.du.imag()};
  double log_scale = start.log_scale;
  const double length = std::abs(x_to - x_from);
  if (length == 0.0) return start;
  const double direction = x_to > x_from ? 1.0 : -1.0;
  const double qscale = std::sqrt(std::abs(q_eval(x_from, p, lambda))) + 1.0;
  double dt = direction * std::min(length, 0.05 / qscale);
  double x = x_from;
  const double min_step = 1e-15 * std::max(1.0, std::max(std::abs(x_from), std::abs(x_to)));
  constexpr long max_steps = 50'000'000;

  for (long attempts = 0; direction * (x_to - x) > 0.0; ++attempts) {
    if (attempts > max_steps)
      throw Error(ErrorKind::step_underflow, "propagate: step budget exhausted");
    if (direction * (x + dt - x_to) > 0.0) dt = x_to - x;
    const double x_before = x;
    if (stepper.try_step(system, state, x, dt) == odeint::fail) {
      if (std::abs(dt) < min_step)
        throw Error(ErrorKind::step_underflow,
                    "propagate: step size underflow near x=" + std::to_string(x));
      continue;
    }
    // Landing exactly on the endpoint avoids a trailing sliver step.
    if (direction * (x_to - x) <= min_step && x != x_before) x = x_to;

    const double size = std::max(std::abs(u_of(state)), std::abs(du_of(state)));
    if (size > 1e30 || (size < 1e-30 && size > 0.0)) {
      for (double& v : state) v /= size;
      log_scale += std::log(size);
    }
  }
  return {u_of(state), du_of(state), log_scale};
}

ScaledPair integrate(const PotentialSpec& p, cplx lambda, const ShootingConfig& cfg) {
  const double R = select_radius(p, lambda, cfg);
  return propagate(p, lambda, R, 0.0, wkb_init(p, lambda, R), cfg.ode_rel_tol, cfg.ode_abs_tol);
}

BoundaryValue boundary_fn(const ShootingProblem& prob, cplx E, const ShootingConfig& cfg) {
  const ScaledPair at_zero = integrate(prob.p, -E, cfg);
  return {prob.bc.alpha() * at_zero.u + prob.bc.beta() * at_zero.du, at_zero.log_scale};
}

namespace {

// W(E + h) / W(E) without forming either value.
cplx ratio(const BoundaryValue& num, const BoundaryValue& den) {
  return num.mantissa / den.mantissa * std::exp(num.log_scale - den.log_scale);
}

}  // namespace

EigenvalueRecord newton_refine(const ShootingProblem& prob, cplx E0, const ShootingConfig& cfg,
                               std::vector<cplx>* trace) {
  ShootingConfig fixed = cfg;
  fixed.radius = select_radius(prob.p, -E0, cfg);
  fixed.radius_factor = 1.0;

  cplx E = E0;
  for (int it = 1; it <= cfg.max_newton_iter; ++it) {
    const double h = cfg.fd_step * (1.0 + std::abs(E));
    const BoundaryValue w0 = boundary_fn(prob, E, fixed);
    cplx step{0.0, 0.0};
    if (w0.mantissa != cplx(0.0, 0.0)) {
      const cplx plus = ratio(boundary_fn(prob, E + h, fixed), w0);
      const cplx minus = ratio(boundary_fn(prob, E - h, fixed), w0);
      const cplx log_derivative = (plus - minus) / (2.0 * h);  // W'/W
      if (log_derivative == cplx(0.0, 0.0) || !std::isfinite(std::abs(log_derivative)))
        throw Error(ErrorKind::derivative, "newton_refine: derivative vanished near E=" +
                                               std::to_string(E.real()));
      step = 1.0 / log_derivative;
    }
    E -= step;
    if (trace) trace->push_back(E);
    if (!std::isfinite(std::abs(E)))
      throw Error(ErrorKind::convergence, "newton_refine: iterate diverged");
    const double relative = std::abs(step) / (1.0 + std::abs(E));
    if (relative <= cfg.newton_tol) {
      EigenvalueRecord rec;
      rec.E = E;
      rec.residual = relative;
      rec.method = RecordMethod::numeric;
      rec.iterations = it;
      return rec;
    }
  }
  throw Error(ErrorKind::convergence, "newton_refine: no convergence from seed E0=" +
                                          std::to_string(E0.real()) + "+" +
                                          std::to_string(E0.imag()) + "i");
}

std::vector<EigenvalueRecord> scan(const ShootingProblem& prob, const AsymptoticModel& model,
                                   int n_lo, int n_hi, const ShootingConfig& cfg) {
  if (n_hi < n_lo) throw Error(ErrorKind::input, "scan: empty index window");
  if (!(n_lo + prob.bc.offset() > 0.0))
    throw Error(ErrorKind::input, "scan: n_lo + offset must be positive");
  const std::size_t count = static_cast<std::size_t>(n_hi - n_lo + 1);
  std::vector<EigenvalueRecord> refined(count);
  const double offset = prob.bc.offset();
  detail::parallel_for(count, detail::worker_count(cfg.threads), [&](std::size_t i) {
    const int n = n_lo + static_cast<int>(i);
    EigenvalueRecord rec = newton_refine(prob, eval_asym_E(model, n), cfg);
    rec.counting_value = counting_residual(model, rec.E);
    rec.n = static_cast<int>(std::lround(rec.counting_value.real() - offset));
    refined[i] = rec;
  });

  std::sort(refined.begin(), refined.end(),
            [](const auto& a, const auto& b) { return std::abs(a.E) < std::abs(b.E); });
  std::vector<EigenvalueRecord> unique;
  for (const auto& rec : refined) {
    const bool duplicate = std::any_of(unique.begin(), unique.end(), [&](const auto& u) {
      return std::abs(u.E - rec.E) <= cfg.dedup_tol * (1.0 + std::abs(rec.E));
    });
    if (!duplicate) unique.push_back(rec);
  }

  std::map<int, const EigenvalueRecord*> by_index;
  for (const auto& rec : unique) {
    auto [it, inserted] = by_index.emplace(rec.n, &rec);
    if (!inserted)
      throw Error(ErrorKind::index_collision,
                  "scan: two distinct zeros map to index " + std::to_string(rec.n) +
                      " (seeds outside the asymptotic regime?)");
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    if (!by_index.count(n))
      throw Error(ErrorKind::index_collision,
                  "scan: no zero assigned to index " + std::to_string(n) +
                      " (seeds outside the asymptotic regime?)");
  }
  if (static_cast<int>(by_index.size()) != n_hi - n_lo + 1)
    throw Error(ErrorKind::index_collision, "scan: zero assigned outside the index window");
  return unique;
}

NumericCount N_numeric(std::span<const EigenvalueRecord> records, double t) {
  NumericCount result;
  double largest = 0.0;
  for (const auto& rec : records) {
    const double modulus = std::abs(rec.E);
    largest = std::max(largest, modulus);
    if (modulus <= t) ++result.count;
  }
  result.beyond_coverage = records.empty() || t > largest;
  return result;
}

namespace {

struct RealPolynomial {
  std::vector<double> a;  // a_1..a_{m-1}
  int m;

  double value(double x) const {
    double acc = 1.0;
    for (double c : a) acc = acc * x + c;
    return acc * x;
  }
  double first(double x) const {
    double acc = m;
    for (int j = 1; j <= m - 1; ++j) acc = acc * x + (m - j) * a[j - 1];
    return acc;
  }
  double second(double x) const {
    double acc = static_cast<double>(m) * (m - 1);
    for (int j = 1; j <= m - 2; ++j) acc = acc * x + static_cast<double>(m - j) * (m - j - 1) * a[j - 1];
    return acc;
  }
};

}  // namespace

double titchmarsh_count(const PotentialSpec& p, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::domain, "titchmarsh_count: t must be positive");
  if (!p.is_real())
    throw Error(ErrorKind::precondition, "titchmarsh_count: coefficients must be real");
  const int m = p.m();
  RealPolynomial V{{}, m};
  for (int j = 1; j <= m - 1; ++j) V.a.push_back(p.coeff(j).real());

  // Bracket and solve V(x0) = t; V(0) = 0 < t.
  double hi = 1.0;
  for (int i = 0; V.value(hi) < t; ++i) {
    if (i > 200) throw Error(ErrorKind::convergence, "titchmarsh_count: no turning point");
    hi *= 2.0;
  }
  double lo = 0.0;
  double x0 = hi;
  for (int it = 0; it < 200; ++it) {
    const double f = V.value(x0) - t;
    if (f > 0.0) hi = x0; else lo = x0;
    const double df = V.first(x0);
    double next = df > 0.0 ? x0 - f / df : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x0) <= 1e-15 * std::max(1.0, x0)) {
      x0 = next;
      break;
    }
    x0 = next;
    if (it == 199) throw Error(ErrorKind::convergence, "titchmarsh_count: root finding failed");
  }

  constexpr int samples = 1024;
  for (int i = 0; i <= samples; ++i) {
    const double x = 2.0 * x0 * i / samples;
    const bool increasing = x == 0.0 ? V.first(x) >= 0.0 : V.first(x) > 0.0;
    if (!increasing || V.second(x) < -1e-12 * (1.0 + std::abs(V.second(x))))
      throw Error(ErrorKind::precondition,
                  "titchmarsh_count: x^m + P(x) must be increasing and convex on [0, inf)");
  }

  // x = x0 (1 - s^2) moves the square-root endpoint to s = 0.
  auto integrand = [&](double s) {
    const double x = x0 * (1.0 - s * s);
    return 2.0 * x0 * s * std::sqrt(std::max(0.0, t - V.value(x)));
  };
  auto result = detail::gauss_kronrod(integrand, 0.0, 1.0);
  detail::require_quad_tolerance(result.error, 1e-9 * std::max(1.0, std::abs(result.value)),
                                 "titchmarsh_count");
  return result.value / pi;
}

}  // namespace halfline
