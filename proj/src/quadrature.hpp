#pragma once

// Thin wrapper over Boost's adaptive Gauss-Kronrod rule that reports failure
// through halfline::Error instead of a silent error estimate.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <string>

#include "halfline/error.hpp"

namespace halfline::detail {

template <class T>
struct QuadResult {
  T value;
  double error;
};

template <class F>
auto gauss_kronrod(F&& f, double a, double b, double rel_tol = 1e-14,
                   unsigned max_depth = 25) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  auto value = gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &error);
  return QuadResult<decltype(value)>{value, error};
}

inline void require_quad_tolerance(double error, double tolerance, const char* what) {
  if (!(error <= tolerance))
    throw Error(ErrorKind::quadrature, std::string(what) + ": error estimate " +
                                           std::to_string(error) + " exceeds " +
                                           std::to_string(tolerance));
}

}  // namespace halfline::detail
