#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "halfline/specfun.hpp"

namespace halfline {

/// Degree m >= 3 and coefficients of P(x) = a_1 x^{m-1} + ... + a_{m-1} x.
class PotentialSpec {
 public:
  /// Throws input error unless m >= 3 and a.size() == m - 1.
  PotentialSpec(int m, std::vector<cplx> a);

  static PotentialSpec zero(int m);

  int m() const noexcept { return m_; }
  /// a_j with 1-based j; zero outside 1..m-1.
  cplx coeff(int j) const noexcept;
  std::span<const cplx> coeffs() const noexcept { return a_; }
  bool is_real() const noexcept;

  /// Largest order of the asymptotic expansions, floor((m+2)/2).
  int max_order() const noexcept { return (m_ + 2) / 2; }

  /// Copy with a_j replaced (1-based).
  PotentialSpec with_coeff(int j, cplx value) const;

 private:
  int m_;
  std::vector<cplx> a_;
};

/// Exponent vector xi over the m-1 coefficients; xi[i] belongs to a_{i+1}.
struct MultiIndex {
  std::vector<int> xi;

  /// |xi| = sum of entries.
  int order() const noexcept;
  /// xi . eta with eta = (1, 2, ..., m-1).
  int weight() const noexcept;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// All xi in (Z>=0)^{m-1} with |xi| = k and xi.eta = j, ascending
/// lexicographic order. Generated from partitions of j into k parts <= m-1.
std::vector<MultiIndex> enumerate(int m, int k, int j);

/// k!/xi! with k = |xi|. Exact in 64-bit integers while it fits.
double multinomial(const MultiIndex& xi);

/// prod_i values[i]^{xi[i]} (values[i] pairs with xi[i]).
cplx monomial(std::span<const cplx> values, const MultiIndex& xi);

/// binom(1/2, k) * sum_{|xi|=k, xi.eta=j} (k!/xi!) a^xi, 1 <= k <= j <= (m+2)/2.
cplx b_jk(const PotentialSpec& p, int j, int k);

/// sum_{k=1}^{j} b_{j,k}(a): coefficient of t^{m/2-j} in sqrt(t^m + P(t)).
cplx b_j(const PotentialSpec& p, int j);

/// 0 for odd m, b_{m/2+1}(a) for even m.
cplx nu(const PotentialSpec& p);

}  // namespace halfline
