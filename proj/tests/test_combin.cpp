#include <doctest.h>

#include <random>

#include "halfline/combin.hpp"
#include "halfline/error.hpp"
#include "oracles.hpp"

using namespace halfline;

namespace {

std::vector<std::vector<int>> as_vectors(const std::vector<MultiIndex>& v) {
  std::vector<std::vector<int>> out;
  for (const auto& x : v) out.push_back(x.xi);
  return out;
}

PotentialSpec random_potential(int m, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<cplx> a(m - 1);
  for (auto& c : a) c = {u(rng), u(rng)};
  return {m, a};
}

}  // namespace

TEST_CASE("PotentialSpec validation") {
  CHECK_THROWS_AS(PotentialSpec(2, {1.0}), Error);
  CHECK_THROWS_AS(PotentialSpec(4, {1.0, 2.0}), Error);
  const PotentialSpec p(4, {1.0, 2.0, 3.0});
  CHECK(p.coeff(0) == 0.0);
  CHECK(p.coeff(2) == 2.0);
  CHECK(p.coeff(4) == 0.0);
  CHECK(p.is_real());
  CHECK(p.with_coeff(3, {0.0, 1.0}).coeff(3) == cplx(0.0, 1.0));
  CHECK(p.max_order() == 3);
  CHECK(PotentialSpec::zero(7).coeffs().size() == 6);
}

TEST_CASE("enumerate examples") {
  CHECK(as_vectors(enumerate(4, 2, 3)) == std::vector<std::vector<int>>{{1, 1, 0}});
  CHECK(as_vectors(enumerate(4, 3, 3)) == std::vector<std::vector<int>>{{3, 0, 0}});
  CHECK(as_vectors(enumerate(5, 2, 4)) ==
        std::vector<std::vector<int>>{{0, 2, 0, 0}, {1, 0, 1, 0}});
}

TEST_CASE("enumerate matches exhaustive search") {
  for (int m = 3; m <= 8; ++m) {
    for (int k = 0; k <= 5; ++k) {
      for (int j = 0; j <= 12; ++j) {
        const auto got = as_vectors(enumerate(m, k, j));
        INFO("m=" << m << " k=" << k << " j=" << j);
        CHECK(got == oracle::brute_multi_indices(m, k, j));
        CHECK(got.empty() == (j < k || j > k * (m - 1)));
        for (const auto& xi : enumerate(m, k, j)) {
          CHECK(xi.order() == k);
          CHECK(xi.weight() == j);
        }
      }
    }
  }
}

TEST_CASE("multinomial") {
  CHECK(multinomial({{2, 0, 0}}) == 1.0);
  CHECK(multinomial({{1, 1, 0}}) == 2.0);
  CHECK(multinomial({{1, 2, 3}}) == 60.0);
  CHECK(multinomial({{10, 10, 10}}) == 5550996791340.0);
  // Beyond 64-bit range the value still matches the gamma-function form.
  const double big = multinomial({{40, 40, 40}});
  CHECK(std::abs(std::log(big) - (std::lgamma(121.0) - 3 * std::lgamma(41.0))) <= 1e-10);
}

TEST_CASE("b_jk examples") {
  const PotentialSpec p(5, {cplx(1.5, -0.5), 2.0, -1.0, 0.25});
  const cplx a1 = p.coeff(1), a2 = p.coeff(2);
  CHECK(std::abs(b_jk(p, 1, 1) - a1 / 2.0) <= 1e-15);
  CHECK(std::abs(b_jk(p, 2, 2) + a1 * a1 / 8.0) <= 1e-15);
  CHECK(std::abs(b_jk(p, 3, 2) + a1 * a2 / 4.0) <= 1e-15);
  CHECK_THROWS_AS(b_jk(p, 0, 0), Error);
  CHECK_THROWS_AS(b_jk(p, 2, 3), Error);
  CHECK_THROWS_AS(b_jk(p, 4, 1), Error);
}

TEST_CASE("b_j equals the coefficients of the sqrt series") {
  std::mt19937 rng(3);
  for (int m = 3; m <= 9; ++m) {
    for (int trial = 0; trial < 5; ++trial) {
      const PotentialSpec p = random_potential(m, rng);
      // sqrt(t^m + P(t)) = t^{m/2} sqrt(1 + sum_j a_j s^j), s = 1/t.
      std::vector<cplx> w(m, 0.0);
      for (int j = 1; j < m; ++j) w[j] = p.coeff(j);
      const auto c = oracle::sqrt_series(w, p.max_order());
      for (int j = 1; j <= p.max_order(); ++j) {
        INFO("m=" << m << " j=" << j);
        CHECK(oracle::rel_err(b_j(p, j), c[j]) <= 1e-13);
      }
    }
  }
  const PotentialSpec q(6, {1.0, 3.0, 0.0, 0.0, 0.0});
  CHECK(std::abs(b_j(q, 2) - (1.5 - 0.125)) <= 1e-15);
  for (int j = 1; j <= 4; ++j) CHECK(b_j(PotentialSpec::zero(6), j) == 0.0);
}

TEST_CASE("nu") {
  CHECK(nu(PotentialSpec(5, {1.0, 2.0, 3.0, 4.0})) == 0.0);
  CHECK(nu(PotentialSpec::zero(4)) == 0.0);
  CHECK(std::abs(nu(PotentialSpec(4, {1.0, 1.0, 1.0})) - 5.0 / 16.0) <= 1e-15);
}

TEST_CASE("b_jk is linear in a_j and blind to higher coefficients") {
  std::mt19937 rng(5);
  for (int m = 3; m <= 8; ++m) {
    const PotentialSpec p = random_potential(m, rng);
    for (int j = 1; j <= p.max_order(); ++j) {
      for (int k = 1; k <= j; ++k) {
        if (j <= m - 1) {
          const cplx x = p.coeff(j), h{0.37, -0.21};
          const cplx f0 = b_jk(p.with_coeff(j, x - h), j, k);
          const cplx f1 = b_jk(p.with_coeff(j, x), j, k);
          const cplx f2 = b_jk(p.with_coeff(j, x + h), j, k);
          CHECK(std::abs(f0 - 2.0 * f1 + f2) <= 1e-12);
        }
        for (int l = j + 1; l <= m - 1; ++l)
          CHECK(b_jk(p.with_coeff(l, {9.0, -4.0}), j, k) == b_jk(p, j, k));
      }
    }
  }
}
