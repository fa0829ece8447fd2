#include "halfline/asym.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "halfline/error.hpp"
#include "quadrature.hpp"

namespace halfline {

BoundaryCondition::BoundaryCondition(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
  if (std::abs(alpha_) + std::abs(beta_) == 0.0)
    throw Error(ErrorKind::input, "boundary condition needs |alpha| + |beta| != 0");
}

namespace {

bool is_even(int m) { return m % 2 == 0; }

// Number of b_j t^{m/2-j} terms subtracted in the regularized integrals:
// (m+1)/2 for odd m, m/2 for even m (the next one is handled by 1/(t+1)).
int subtracted_terms(int m) { return is_even(m) ? m / 2 : (m + 1) / 2; }

void require_k_index(int m, int j, int k) {
  if (!k_index_legal(m, j, k))
    throw Error(ErrorKind::range, "K_{m,j,k}: illegal index (m=" + std::to_string(m) +
                                      ", j=" + std::to_string(j) +
                                      ", k=" + std::to_string(k) + ")");
}

}  // namespace

bool k_index_legal(int m, int j, int k) noexcept {
  if (m < 3) return false;
  if (j == 0 && k == 0) return true;
  if (k < 1 || k > j) return false;
  if (2 * j <= m + 1) return true;
  return is_even(m) && 2 * j == m + 2;
}

double K_closed(int m, int j, int k) {
  require_k_index(m, j, k);
  const double md = m;
  if (j == 0) return beta(0.5, 1.0 + 1.0 / md) / (2.0 * std::cos(pi / md));
  if (j == 1 && k == 1) return -2.0 / md;
  if (2 * j <= m + 1) {
    const double shift = (j - 1) / md;
    return -(2.0 * k - 1.0) / (md + 2.0 - 2.0 * j) * beta(k - shift, 0.5 + shift);
  }
  // m even, j = (m+2)/2: (2/m)(ln 2 - 1 - 1/3 - ... - 1/(2k-3)).
  double sum = std::log(2.0);
  for (int i = 1; i <= k - 1; ++i) sum -= 1.0 / (2.0 * i - 1.0);
  return 2.0 / md * sum;
}

double K_quad(int m, int j, int k) {
  require_k_index(m, j, k);
  const double md = m;
  const bool log_case = j > 0 && 2 * j == m + 2;
  const double power = log_case ? md * k - md / 2.0 - 1.0 : md * k - j;
  const double half_minus_k = 0.5 - k;

  // Integrand on t in [0, 1] evaluated directly.
  auto near = [&](double t) {
    const double head = std::pow(t, power) * std::pow(std::pow(t, md) + 1.0, half_minus_k);
    return log_case ? head - 1.0 / (t + 1.0) : head - std::pow(t, md / 2.0 - j);
  };
  // For t > 1 the two terms nearly cancel; factor out the common power and
  // use expm1/log1p. Writes the integrand in terms of v with t = 1/v^2.
  auto far = [&](double v) {
    const double x = std::pow(v, 2.0 * md);  // t^{-m}
    const double bracket = std::expm1(half_minus_k * std::log1p(x));
    if (log_case) {
      // t^{-1} bracket + 1/(t(t+1)), times dt = 2 v^{-3} dv.
      return 2.0 / v * bracket + 2.0 * v / (1.0 + v * v);
    }
    // t^{m/2-j} bracket, times 2 v^{-3}.
    return 2.0 * std::pow(v, 2.0 * j - md - 3.0) * bracket;
  };

  // t = s^2 on [0, 1] removes the t^{-1/2} endpoint singularity.
  auto lower = detail::gauss_kronrod([&](double s) { return 2.0 * s * near(s * s); }, 0.0, 1.0);
  auto upper = detail::gauss_kronrod(far, 0.0, 1.0);
  detail::require_quad_tolerance(lower.error + upper.error, 1e-9, "K_quad");
  return lower.value + upper.value;
}

cplx K_mj(const PotentialSpec& p, int j) {
  if (j < 0 || j > p.max_order())
    throw Error(ErrorKind::range, "K_mj: need 0 <= j <= floor((m+2)/2)");
  if (j == 0) return K_closed(p.m(), 0, 0);
  cplx sum{0.0, 0.0};
  for (int k = 1; k <= j; ++k) sum += b_jk(p, j, k) * K_closed(p.m(), j, k);
  return sum;
}

cplx d_j(const PotentialSpec& p, int j) {
  const int m = p.m();
  if (j < 0 || j > p.max_order())
    throw Error(ErrorKind::range, "d_j: need 0 <= j <= floor((m+2)/2)");
  if (2 * j <= m + 1) return std::cos((j - 1) * pi / m) * K_mj(p, j);
  // m even, j = (m+2)/2.
  return -nu(p) * pi / static_cast<double>(m);
}

double en0_scale(int m) {
  if (m < 3) throw Error(ErrorKind::input, "en0_scale: m must be >= 3");
  const double md = m;
  return std::exp(std::log(2.0) + 0.5 * std::log(pi) + lngamma(1.5 + 1.0 / md) -
                  lngamma(1.0 + 1.0 / md));
}

double En0(int n, int m, const BoundaryCondition& bc) {
  const double shifted = n + bc.offset();
  if (!(shifted > 0.0))
    throw Error(ErrorKind::domain, "En0: n + offset must be positive, n=" + std::to_string(n));
  return std::pow(en0_scale(m) * shifted, 2.0 * m / (m + 2.0));
}

std::vector<cplx> build_e(const PotentialSpec& p, int depth) {
  const int m = p.m();
  if (depth < 1 || depth > p.max_order())
    throw Error(ErrorKind::range, "build_e: need 1 <= depth <= floor((m+2)/2)");
  const double md = m;
  const cplx d0 = d_j(p, 0);
  std::vector<cplx> ratio(depth + 1);
  for (int r = 1; r <= depth; ++r) ratio[r] = d_j(p, r) / d0;

  std::vector<cplx> e(depth + 1, cplx{0.0, 0.0});
  e[0] = 1.0;
  // e_1..e_{m-1} aligned with multi-index slots; unknown entries stay zero
  // and never enter because xi.eta constraints exclude them.
  std::vector<cplx> slots(m - 1, cplx{0.0, 0.0});
  const double s0 = 0.5 + 1.0 / md;
  for (int j = 1; j <= depth; ++j) {
    cplx acc = ratio[j];
    for (int k = 2; k <= j; ++k) {
      const double c = gen_binomial(s0, k);
      for (const auto& xi : enumerate(m, k, j)) acc += c * multinomial(xi) * monomial(slots, xi);
    }
    for (int r = 1; r <= j - 1; ++r) {
      const double sr = 0.5 + (1.0 - r) / md;
      cplx inner{0.0, 0.0};
      for (int k = 1; k <= j - r; ++k) {
        const double c = gen_binomial(sr, k);
        for (const auto& xi : enumerate(m, k, j - r))
          inner += c * multinomial(xi) * monomial(slots, xi);
      }
      acc += ratio[r] * inner;
    }
    e[j] = -(2.0 * md / (md + 2.0)) * acc;
    if (j - 1 < m - 1) slots[j - 1] = e[j];
  }
  return e;
}

AsymptoticModel::AsymptoticModel(PotentialSpec p, BoundaryCondition bc)
    : p_(std::move(p)), bc_(bc), nu_(halfline::nu(p_)), scale_(halfline::en0_scale(p_.m())),
      depth_(p_.max_order()) {
  const int top = p_.max_order();
  K_.reserve(top + 1);
  d_.reserve(top + 1);
  for (int j = 0; j <= top; ++j) {
    K_.push_back(K_mj(p_, j));
    d_.push_back(d_j(p_, j));
  }
  e_ = build_e(p_, top);
}

AsymptoticModel AsymptoticModel::truncated(int depth) const {
  if (depth < 0 || depth > p_.max_order())
    throw Error(ErrorKind::range, "truncated: depth out of range");
  AsymptoticModel copy = *this;
  copy.depth_ = depth;
  return copy;
}

cplx eval_asym_E(const AsymptoticModel& model, int n) {
  const int m = model.m();
  const double e0 = En0(n, m, model.boundary());
  cplx E = e0;
  for (int j = 1; j <= model.depth(); ++j)
    E += model.e()[j] * std::pow(e0, 1.0 - static_cast<double>(j) / m);
  return E;
}

cplx counting_residual(const AsymptoticModel& model, cplx E) {
  if (E == cplx(0.0, 0.0)) throw Error(ErrorKind::domain, "counting_residual: E = 0");
  const int m = model.m();
  cplx sum{0.0, 0.0};
  for (std::size_t j = 0; j < model.d().size(); ++j)
    sum += model.d()[j] * cpow(E, 0.5 + (1.0 - static_cast<double>(j)) / m);
  return sum / pi;
}

cplx counting_residual_derivative(const AsymptoticModel& model, cplx E) {
  if (E == cplx(0.0, 0.0)) throw Error(ErrorKind::domain, "counting_residual: E = 0");
  const int m = model.m();
  cplx sum{0.0, 0.0};
  for (std::size_t j = 0; j < model.d().size(); ++j) {
    const double s = 0.5 + (1.0 - static_cast<double>(j)) / m;
    if (s != 0.0) sum += model.d()[j] * s * cpow(E, s - 1.0);
  }
  return sum / pi;
}

double N_asym(const AsymptoticModel& model, double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::domain, "N_asym: t must be positive");
  const int m = model.m();
  for (std::size_t j = 1; j < model.K().size(); ++j) {
    const cplx K = model.K()[j];
    if (std::abs(K.imag()) > 1e-10 * (1.0 + std::abs(K)))
      throw Error(ErrorKind::hypothesis, "N_asym: Im K_{m," + std::to_string(j) +
                                             "}(a) != 0, counting expansion not available");
  }
  double sum = 0.0;
  for (int j = 0; j <= (m + 1) / 2; ++j)
    sum += std::cos((j - 1) * pi / m) * model.K()[j].real() *
           std::pow(t, 0.5 - (j - 1.0) / m);
  return sum / pi;
}

namespace {

void require_off_cut(cplx lambda, const char* what) {
  if (lambda == cplx(0.0, 0.0) || (lambda.imag() == 0.0 && lambda.real() < 0.0))
    throw Error(ErrorKind::domain, std::string(what) + ": lambda on the branch cut");
}

}  // namespace

cplx L_series(const PotentialSpec& p, cplx lambda, bool with_log) {
  require_off_cut(lambda, "L_series");
  const int m = p.m();
  const int top = is_even(m) ? m / 2 + 1 : (m + 1) / 2;
  cplx sum{0.0, 0.0};
  for (int j = 0; j <= top; ++j) sum += K_mj(p, j) * cpow(lambda, 0.5 + (1.0 - j) / m);
  if (is_even(m) && with_log) sum -= b_j(p, m / 2 + 1) / static_cast<double>(m) * std::log(lambda);
  return sum;
}

namespace {

cplx horner(const PotentialSpec& p, double t, cplx lambda) {
  // t^m + a_1 t^{m-1} + ... + a_{m-1} t + lambda
  cplx acc{1.0, 0.0};
  for (int j = 1; j <= p.m() - 1; ++j) acc = acc * t + p.coeff(j);
  return acc * t + lambda;
}

// P(t) + lambda.
cplx lower_terms(const PotentialSpec& p, double t, cplx lambda) {
  cplx acc{0.0, 0.0};
  for (int j = 1; j <= p.m() - 1; ++j) acc = acc * t + p.coeff(j);
  return acc * t + lambda;
}

// Rejects lambda for which t -> t^m + P(t) + lambda meets (-inf, 0] on [0, T].
void require_no_branch_crossing(const PotentialSpec& p, cplx lambda, double T) {
  constexpr int samples = 4096;
  cplx prev = horner(p, 0.0, lambda);
  for (int i = 0; i <= samples; ++i) {
    const double s = static_cast<double>(i) / samples;
    const cplx q = horner(p, T * s * s, lambda);
    const bool on_cut = q.real() <= 0.0 && std::abs(q.imag()) <= 1e-14 * std::abs(q);
    const bool crossed = q.real() < 0.0 && prev.real() < 0.0 &&
                         std::signbit(q.imag()) != std::signbit(prev.imag());
    if (on_cut || crossed)
      throw Error(ErrorKind::branch, "L_quad: t^m + P(t) + lambda meets the negative real axis");
    prev = q;
  }
}

}  // namespace

cplx L_quad(const PotentialSpec& p, cplx lambda) {
  require_off_cut(lambda, "L_quad");
  const int m = p.m();
  const double md = m;
  const int nsub = subtracted_terms(m);
  std::vector<cplx> b(nsub + 2, cplx{0.0, 0.0});
  for (int j = 1; j <= std::min(nsub + 1, p.max_order()); ++j) b[j] = b_j(p, j);
  const cplx b_log = is_even(m) ? b[m / 2 + 1] : cplx{0.0, 0.0};

  // Fujiwara bound on the roots of t^m + P(t) + lambda. Beyond 4x the bound
  // the square root expands in a convergent series in 1/t.
  double bound = std::pow(std::abs(lambda) / 2.0, 1.0 / md);
  for (int j = 1; j <= m - 1; ++j)
    bound = std::max(bound, std::pow(std::abs(p.coeff(j)), 1.0 / j));
  const double T = std::max(1.0, 8.0 * bound);
  require_no_branch_crossing(p, lambda, T);

  // Head: integral over [0, T] with t = s^2.
  auto head_integrand = [&](double s) {
    const double t = s * s;
    // sqrt(Q) - t^{m/2} = (P + lambda) / (sqrt(Q) + t^{m/2}) avoids the cancellation.
    const double lead = std::pow(s, md);
    const cplx rest = lower_terms(p, t, lambda);
    cplx value = 2.0 * s * rest / (std::sqrt(lead * lead + rest) + lead);
    for (int j = 1; j <= nsub; ++j) value -= 2.0 * b[j] * std::pow(s, md - 2.0 * j + 1.0);
    if (is_even(m)) value -= 2.0 * s * b_log / (t + 1.0);
    return value;
  };
  auto head = detail::gauss_kronrod(head_integrand, 0.0, std::sqrt(T));

  // Tail: sqrt(1 + w(u)) = sum_n c_n u^n with u = 1/t and
  // w(u) = a_1 u + ... + a_{m-1} u^{m-1} + lambda u^m.
  constexpr int max_terms = 400;
  std::vector<cplx> w(max_terms + 1, cplx{0.0, 0.0});
  for (int j = 1; j <= m - 1; ++j) w[j] = p.coeff(j);
  w[m] = lambda;
  std::vector<cplx> c(max_terms + 1, cplx{0.0, 0.0});
  c[0] = 1.0;
  cplx tail{0.0, 0.0};
  if (is_even(m)) tail += b_log * std::log1p(1.0 / T);
  int quiet = 0;
  for (int n = 1; n <= max_terms; ++n) {
    cplx conv{0.0, 0.0};
    for (int k = 1; k < n; ++k) conv += c[k] * c[n - k];
    c[n] = (w[n] - conv) / 2.0;
    if (n <= nsub || (is_even(m) && n == m / 2 + 1)) continue;
    const double expo = md / 2.0 - n + 1.0;  // < 0 here
    const cplx term = c[n] * std::pow(T, expo) / (-expo);
    tail += term;
    if (n > m && std::abs(term) <= 1e-17 * (1.0 + std::abs(tail))) {
      if (++quiet >= m) break;  // a full period of w, which may be sparse
    } else {
      quiet = 0;
    }
  }
  detail::require_quad_tolerance(head.error, 1e-8, "L_quad");
  return head.value + tail;
}

}  // namespace halfline
