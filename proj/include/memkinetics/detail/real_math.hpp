#ifndef MEMKINETICS_DETAIL_REAL_MATH_HPP
#define MEMKINETICS_DETAIL_REAL_MATH_HPP

// Scalar primitives shared by the double and extended-precision series paths.
//
// The extended type is __float128 when the build found libquadmath
// (MEMKINETICS_HAVE_QUADMATH), long double otherwise.

#include <cmath>
#include <cstdint>
#include <limits>
#include <type_traits>

#if defined(MEMKINETICS_HAVE_QUADMATH)
#include <quadmath.h>
#endif

namespace memkinetics::detail {

#if defined(MEMKINETICS_HAVE_QUADMATH)
using wide_real = __float128;
#else
using wide_real = long double;
#endif

template <class Real>
inline constexpr double epsilon_of = std::numeric_limits<Real>::epsilon();

#if defined(MEMKINETICS_HAVE_QUADMATH)
template <>
inline constexpr double epsilon_of<__float128> = 1.925929944387235853e-34;
#endif

inline double rlog(double x) { return std::log(x); }
inline double rexp(double x) { return std::exp(x); }
inline double rabs(double x) { return std::fabs(x); }
inline double rsin(double x) { return std::sin(x); }
inline double rfloor(double x) { return std::floor(x); }

inline long double rlog(long double x) { return std::log(x); }
inline long double rexp(long double x) { return std::exp(x); }
inline long double rabs(long double x) { return std::fabs(x); }
inline long double rsin(long double x) { return std::sin(x); }
inline long double rfloor(long double x) { return std::floor(x); }

#if defined(MEMKINETICS_HAVE_QUADMATH)
inline __float128 rlog(__float128 x) { return logq(x); }
inline __float128 rexp(__float128 x) { return expq(x); }
inline __float128 rabs(__float128 x) { return fabsq(x); }
inline __float128 rsin(__float128 x) { return sinq(x); }
inline __float128 rfloor(__float128 x) { return floorq(x); }
#endif

template <class Real>
inline Real pi_of() {
#if defined(MEMKINETICS_HAVE_QUADMATH)
  if constexpr (std::is_same_v<Real, __float128>) return 4 * atanq(static_cast<__float128>(1));
#endif
  return static_cast<Real>(3.141592653589793238462643383279502884L);
}

/// log|x| with the sign of x; sign == 0 marks an infinite value (a Gamma pole)
/// or, for a term, an exactly zero contribution depending on context.
template <class Real>
struct SignedLog {
  Real log_abs;
  int sign;
};

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

/// ln|Gamma(x)| and sign(Gamma(x)) in double precision. Thread-safe.
inline SignedLog<double> lgamma_signed(double x) {
  if (is_nonpositive_integer(x)) {
    return {std::numeric_limits<double>::infinity(), 0};
  }
#if defined(__GLIBC__)
  int sign = 1;
  const double v = ::lgamma_r(x, &sign);
  return {v, sign};
#else
  const double v = std::lgamma(x);
  if (x > 0.0) return {v, 1};
  const auto fl = static_cast<std::int64_t>(std::floor(x));
  return {v, (fl % 2 == 0) ? 1 : -1};
#endif
}

namespace gamma_ext {

// B_{2m} for m = 1..15 as exact fractions.
inline constexpr std::int64_t kBernoulliNum[15] = {
    1, -1, 1, -1, 5, -691, 7, -3617, 43867, -174611, 854513, -236364091, 8553103,
    -23749461029LL, 8615841276005LL};
inline constexpr std::int64_t kBernoulliDen[15] = {6,    30, 42,  30, 66,  2730, 6,    510,
                                                   798,  330, 138, 2730, 6,  870,  14322};

template <class Real>
Real stirling_log_gamma(Real x) {
  // x >= 40: truncation below 1e-40 with 15 correction terms.
  const Real half_log_two_pi = rlog(Real(2) * pi_of<Real>()) / Real(2);
  Real result = (x - Real(0.5)) * rlog(x) - x + half_log_two_pi;
  const Real inv_x = Real(1) / x;
  const Real inv_x2 = inv_x * inv_x;
  Real power = inv_x;
  for (int m = 1; m <= 15; ++m) {
    const Real bernoulli = Real(kBernoulliNum[m - 1]) / Real(kBernoulliDen[m - 1]);
    result += bernoulli / (Real(2 * m) * Real(2 * m - 1)) * power;
    power *= inv_x2;
  }
  return result;
}

template <class Real>
SignedLog<Real> log_gamma_positive(Real x) {
  Real shift_product = 1;
  while (x < Real(40)) {
    shift_product *= x;
    x += Real(1);
  }
  return {stirling_log_gamma(x) - rlog(shift_product), 1};
}

}  // namespace gamma_ext

/// ln|Gamma(x)| for any extended real type, via Stirling with upward shift and
/// reflection below 1/2. Absolute accuracy near the type's epsilon times
/// |ln Gamma|, which is what the log-domain series terms need.
template <class Real>
SignedLog<Real> lgamma_signed_ext(Real x) {
  if (x <= Real(0) && x == rfloor(x)) {
    return {Real(std::numeric_limits<double>::infinity()), 0};
  }
  if (x >= Real(0.5)) return gamma_ext::log_gamma_positive(x);
  // Gamma(x) Gamma(1-x) = pi / sin(pi x); reduce the sine argument first.
  const Real nearest = rfloor(x + Real(0.5));
  const Real frac = x - nearest;
  Real s = rsin(pi_of<Real>() * frac);
  const auto parity = static_cast<std::int64_t>(static_cast<double>(nearest));
  if (parity % 2 != 0) s = -s;
  const auto reflected = gamma_ext::log_gamma_positive(Real(1) - x);
  const int sign = s < Real(0) ? -1 : 1;
  return {rlog(pi_of<Real>()) - rlog(rabs(s)) - reflected.log_abs, sign};
}

template <class Real>
SignedLog<Real> lgamma_signed_any(Real x) {
  if constexpr (std::is_same_v<Real, double>) {
    return lgamma_signed(x);
  } else {
    return lgamma_signed_ext(x);
  }
}

}  // namespace memkinetics::detail

#endif  // MEMKINETICS_DETAIL_REAL_MATH_HPP
