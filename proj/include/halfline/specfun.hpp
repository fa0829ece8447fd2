#pragma once

#include <complex>

namespace halfline {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// ln Gamma(x) for x > 0 (Lanczos, g = 607/128). Throws domain error otherwise.
double lngamma(double x);

/// Euler beta function B(x, y) for x, y > 0.
double beta(double x, double y);

/// Generalized binomial coefficient s(s-1)...(s-k+1)/k!, real upper argument.
double gen_binomial(double s, int k);

/// Principal power z^s: arg z in (-pi, pi], cut on the negative real axis.
///
/// A point on the negative real axis is assigned arg = pi regardless of the
/// sign of its zero imaginary part. Positive reals map to positive reals and
/// s == 1 returns z unchanged. z == 0 gives 0 for s > 0 and a domain error
/// for s <= 0.
cplx cpow(cplx z, double s);

/// Argument in (-pi, pi] with the same negative-axis convention as cpow.
double principal_arg(cplx z);

}  // namespace halfline
