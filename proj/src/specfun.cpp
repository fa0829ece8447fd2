#include "halfline/specfun.hpp"

#include <array>
#include <cmath>
#include <string>

#include "halfline/error.hpp"

namespace halfline {

namespace {

// Lanczos coefficients for g = 607/128, n = 15 (Godfrey's set).
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,
    -.210264441724104883e-3, .217439618115212643e-3,
    -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

// zeta(k) for k = 2..30, coefficients of the Taylor series of ln Gamma at 1.
constexpr std::array<double, 29> kZeta = {
    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381915,
    1.0369277551433699263, 1.0173430619844491397, 1.0083492773819228268,
    1.0040773561979443394, 1.0020083928260822144, 1.0009945751278180853,
    1.0004941886041194646, 1.0002460865533080483, 1.0001227133475784891,
    1.0000612481350587048, 1.0000305882363070205, 1.0000152822594086519,
    1.0000076371976378998, 1.0000038172932649998, 1.0000019082127165539,
    1.0000009539620338728, 1.0000004769329867878, 1.0000002384505027277,
    1.0000001192199259653, 1.0000000596081890513, 1.0000000298035035147,
    1.0000000149015548284, 1.0000000074507117898, 1.0000000037253340248,
    1.0000000018626597235, 1.0000000009313274324};

constexpr double kEulerGamma = 0.57721566490153286061;

// ln Gamma(1 + eps) = -gamma*eps + sum_{k>=2} (-1)^k zeta(k) eps^k / k.
double lngamma1p_series(double eps) {
  double sum = 0.0;
  double power = -eps;  // (-eps)^k
  for (std::size_t i = 0; i < kZeta.size(); ++i) {
    power *= -eps;
    sum += kZeta[i] * power / static_cast<double>(i + 2);
  }
  return sum - kEulerGamma * eps;
}

double lanczos_lngamma(double x) {
  double y = x;
  double tmp = x + 5.24218750000000000;  // g + 1/2
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : kLanczos) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

}  // namespace

double lngamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorKind::domain, "lngamma: argument must be positive, got " +
                                       std::to_string(x));
  // ln Gamma vanishes at 1 and 2; use the Taylor series there so the result
  // stays accurate relative to its own size.
  if (std::abs(x - 1.0) <= 0.25) return lngamma1p_series(x - 1.0);
  if (std::abs(x - 2.0) <= 0.25)
    return lngamma1p_series(x - 2.0) + std::log1p(x - 2.0);
  return lanczos_lngamma(x);
}

double beta(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0))
    throw Error(ErrorKind::domain, "beta: arguments must be positive");
  return std::exp(lngamma(x) + lngamma(y) - lngamma(x + y));
}

double gen_binomial(double s, int k) {
  if (k < 0) throw Error(ErrorKind::domain, "gen_binomial: k must be >= 0");
  double result = 1.0;
  for (int i = 0; i < k; ++i) result *= (s - i) / (i + 1);
  return result;
}

double principal_arg(cplx z) {
  if (z.imag() == 0.0 && z.real() < 0.0) return pi;
  return std::arg(z);
}

cplx cpow(cplx z, double s) {
  if (s == 1.0) return z;
  if (z == cplx(0.0, 0.0)) {
    if (s > 0.0) return {0.0, 0.0};
    throw Error(ErrorKind::domain, "cpow: zero base with non-positive exponent");
  }
  if (s == 0.0) return {1.0, 0.0};
  if (z.imag() == 0.0 && z.real() > 0.0) return {std::pow(z.real(), s), 0.0};
  return std::polar(std::pow(std::abs(z), s), s * principal_arg(z));
}

}  // namespace halfline
