#include "halfline/combin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "halfline/error.hpp"

namespace halfline {

PotentialSpec::PotentialSpec(int m, std::vector<cplx> a) : m_(m), a_(std::move(a)) {
  if (m_ < 3)
    throw Error(ErrorKind::input, "potential degree m must be >= 3, got " +
                                      std::to_string(m_));
  if (static_cast<int>(a_.size()) != m_ - 1)
    throw Error(ErrorKind::input,
                "potential needs exactly m-1 = " + std::to_string(m_ - 1) +
                    " coefficients, got " + std::to_string(a_.size()));
}

PotentialSpec PotentialSpec::zero(int m) {
  return PotentialSpec(m, std::vector<cplx>(m > 1 ? m - 1 : 0));
}

cplx PotentialSpec::coeff(int j) const noexcept {
  if (j < 1 || j > m_ - 1) return {0.0, 0.0};
  return a_[j - 1];
}

bool PotentialSpec::is_real() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](cplx c) { return c.imag() == 0.0; });
}

PotentialSpec PotentialSpec::with_coeff(int j, cplx value) const {
  if (j < 1 || j > m_ - 1)
    throw Error(ErrorKind::range, "coefficient index out of range");
  auto a = a_;
  a[j - 1] = value;
  return PotentialSpec(m_, std::move(a));
}

int MultiIndex::order() const noexcept {
  return std::accumulate(xi.begin(), xi.end(), 0);
}

int MultiIndex::weight() const noexcept {
  int w = 0;
  for (std::size_t i = 0; i < xi.size(); ++i) w += static_cast<int>(i + 1) * xi[i];
  return w;
}

namespace {

// Partitions of `remaining` into `parts` parts, each in [1, max_part],
// listed as nonincreasing sequences.
void partitions(int remaining, int parts, int max_part, std::vector<int>& counts,
                std::vector<MultiIndex>& out) {
  if (parts == 0) {
    if (remaining == 0) out.push_back(MultiIndex{counts});
    return;
  }
  // Each of the `parts` parts is at least 1 and at most max_part.
  if (remaining < parts || remaining > parts * max_part) return;
  const int hi = std::min(max_part, remaining - (parts - 1));
  for (int part = hi; part >= 1; --part) {
    ++counts[part - 1];
    partitions(remaining - part, parts - 1, part, counts, out);
    --counts[part - 1];
  }
}

}  // namespace

std::vector<MultiIndex> enumerate(int m, int k, int j) {
  if (m < 3 || k < 0 || j < 0)
    throw Error(ErrorKind::domain, "enumerate: need m >= 3, k >= 0, j >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> counts(m - 1, 0);
  partitions(j, k, m - 1, counts, out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// C(n, r) in 64-bit integers; false on overflow.
bool exact_binomial(std::uint64_t n, std::uint64_t r, std::uint64_t& out) {
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    // c * (n - r + i) / i is C(n - r + i, i), an integer at every step.
    std::uint64_t next;
    if (__builtin_mul_overflow(c, n - r + i, &next)) return false;
    c = next / i;
  }
  out = c;
  return true;
}

}  // namespace

double multinomial(const MultiIndex& xi) {
  // k!/xi! = prod_i C(xi_1 + ... + xi_i, xi_i).
  std::uint64_t exact = 1;
  std::uint64_t running = 0;
  bool ok = true;
  for (int part : xi.xi) {
    running += static_cast<std::uint64_t>(part);
    std::uint64_t c = 0;
    ok = exact_binomial(running, static_cast<std::uint64_t>(part), c) &&
         !__builtin_mul_overflow(exact, c, &exact);
    if (!ok) break;
  }
  if (ok) return static_cast<double>(exact);
  double log_value = lngamma(static_cast<double>(xi.order()) + 1.0);
  for (int part : xi.xi) log_value -= lngamma(static_cast<double>(part) + 1.0);
  return std::exp(log_value);
}

cplx monomial(std::span<const cplx> values, const MultiIndex& xi) {
  cplx result{1.0, 0.0};
  for (std::size_t i = 0; i < xi.xi.size(); ++i) {
    for (int p = 0; p < xi.xi[i]; ++p) result *= values[i];
  }
  return result;
}

cplx b_jk(const PotentialSpec& p, int j, int k) {
  if (k < 1 || k > j || j > p.max_order())
    throw Error(ErrorKind::range, "b_jk: need 1 <= k <= j <= floor((m+2)/2), got j=" +
                                      std::to_string(j) + " k=" + std::to_string(k));
  cplx sum{0.0, 0.0};
  for (const auto& xi : enumerate(p.m(), k, j)) sum += multinomial(xi) * monomial(p.coeffs(), xi);
  return gen_binomial(0.5, k) * sum;
}

cplx b_j(const PotentialSpec& p, int j) {
  if (j < 1 || j > p.max_order())
    throw Error(ErrorKind::range, "b_j: need 1 <= j <= floor((m+2)/2), got j=" +
                                      std::to_string(j));
  cplx sum{0.0, 0.0};
  for (int k = 1; k <= j; ++k) sum += b_jk(p, j, k);
  return sum;
}

cplx nu(const PotentialSpec& p) {
  if (p.m() % 2 == 1) return {0.0, 0.0};
  return b_j(p, p.m() / 2 + 1);
}

}  // namespace halfline
