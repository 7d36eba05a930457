#ifndef MEMKINETICS_SPECIALFN_HPP
#define MEMKINETICS_SPECIALFN_HPP

// Special functions behind the closed-form solutions: log-gamma, the
// two-parameter Mittag-Leffler function, the Kilbas-Saigo generalized
// Mittag-Leffler function and the Fox-Wright function Psi_{1,1}.
//
// All functions are pure; concurrent calls are safe.

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "memkinetics/detail/real_math.hpp"
#include "memkinetics/detail/series.hpp"
#include "memkinetics/errors.hpp"

namespace memkinetics {

struct LogGamma {
  double value;  ///< ln|Gamma(x)|
  int sign;      ///< sign of Gamma(x), +1 or -1
};

/// ln|Gamma(x)| with the sign of Gamma(x). Throws PoleError at 0, -1, -2, ...
inline LogGamma ln_gamma(double x) {
  if (std::isnan(x)) throw DomainError("ln_gamma: argument is NaN");
  const auto g = detail::lgamma_signed(x);
  if (g.sign == 0) {
    std::ostringstream os;
    os << "ln_gamma: pole at x = " << x;
    throw PoleError(os.str());
  }
  return {g.log_abs, g.sign};
}

/// Parameters (alpha, b, c) of E_{alpha,b,c}.
struct KilbasSaigoParams {
  double alpha = 1.0;
  double b = 1.0;
  double c = 0.0;

  void validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw DomainError("kilbas_saigo: alpha must be finite and > 0");
    }
    if (!std::isfinite(b) || !std::isfinite(c)) throw DomainError("kilbas_saigo: b, c must be finite");
  }
};

/// Parameters of Psi_{1,1}[(a, alpha_u); (b, beta_l) | z].
struct FoxWrightParams {
  double a = 1.0;
  double alpha_u = 1.0;
  double b = 1.0;
  double beta_l = 1.0;

  void validate() const {
    if (!std::isfinite(a) || !std::isfinite(alpha_u) || !std::isfinite(b) ||
        !std::isfinite(beta_l)) {
      throw DomainError("fox_wright_psi11: parameters must be finite");
    }
    if (alpha_u < 0.0) throw DomainError("fox_wright_psi11: alpha_u must be >= 0");
    if (!(beta_l - alpha_u + 1.0 > 0.0)) {
      throw DomainError("fox_wright_psi11: series diverges unless beta_l - alpha_u + 1 > 0");
    }
  }
};

namespace detail {

// Positive z: above s = |z|^(1/alpha) = 20 the asymptotic expansion's
// neglected pieces are below exp(-2 s) relative. Negative z: the asymptotic
// expansion is tried first once s exceeds kMlNegativeProbe and kept when its
// own truncation estimate meets the tolerance; otherwise the Taylor sum runs
// (in extended precision under cancellation).
inline constexpr double kMlAsymptoticPositive = 20.0;
inline constexpr double kMlNegativeProbe = 5.0;
inline constexpr double kMlAccuracyFloor = 1e-10;

inline double reciprocal_gamma(double x) {
  const auto g = lgamma_signed(x);
  if (g.sign == 0) return 0.0;
  return g.sign * std::exp(-g.log_abs);
}

struct Estimated {
  double value;
  double relative_error;
};

inline Estimated mittag_leffler_taylor(double alpha, double beta, double z,
                                       const SeriesControl& ctl) {
  const int z_sign = z < 0.0 ? -1 : 1;
  const double abs_z = std::fabs(z);
  auto factory = [&]<class Real>() {
    const Real log_z = rlog(Real(abs_z));
    return [=](int k) -> LogTerm<Real> {
      const auto g = lgamma_signed_any<Real>(Real(alpha) * Real(k) + Real(beta));
      if (g.sign == 0) return {};
      const Real power = Real(k) * log_z;
      const int sign = g.sign * ((z_sign < 0 && (k & 1)) ? -1 : 1);
      const double scale = std::fabs(static_cast<double>(power)) +
                           std::fabs(static_cast<double>(g.log_abs));
      return {power - g.log_abs, sign, scale};
    };
  };
  const auto narrow = sum_log_terms<double>(factory.template operator()<double>(), ctl,
                                            "mittag_leffler");
  const double narrow_error = narrow.relative_error_estimate();
  if (narrow_error <= ctl.rtol) return {narrow.value, narrow_error};
  const auto wide = sum_log_terms<wide_real>(factory.template operator()<wide_real>(), ctl,
                                             "mittag_leffler");
  return {static_cast<double>(wide.value), wide.relative_error_estimate()};
}

// E_{a,b}(z) ~ exponential part - sum_{k>=1} z^{-k} / Gamma(b - a k), |z| large.
// The algebraic sum is cut at the smallest term of its envelope
// Gamma(1 - b + a k) / (pi |z|^k); that term is the error estimate.
inline Estimated mittag_leffler_asymptotic(double alpha, double beta, double z) {
  const double abs_z = std::fabs(z);
  const double log_abs_z = std::log(abs_z);
  const double s = std::pow(abs_z, 1.0 / alpha);
  const double pi = pi_of<double>();

  double exponential = 0.0;
  if (z > 0.0) {
    exponential = std::exp((1.0 - beta) / alpha * log_abs_z + s - std::log(alpha));
  } else if (alpha >= 1.0) {
    // Conjugate pair zeta = s exp(+-i pi / alpha); at alpha == 1 both coincide
    // on the Stokes line and carry half weight each.
    const double weight = (alpha == 1.0 ? 1.0 : 2.0) / alpha;
    const double phase = pi * (1.0 - beta) / alpha + s * std::sin(pi / alpha);
    exponential = weight * std::exp((1.0 - beta) * std::log(s) + s * std::cos(pi / alpha)) *
                  std::cos(phase);
  }

  auto term_at = [&](int k) {
    const auto g = lgamma_signed(beta - alpha * k);
    if (g.sign == 0) return 0.0;
    const int sign = -g.sign * ((z < 0.0 && (k & 1)) ? -1 : 1);
    return sign * std::exp(-k * log_abs_z - g.log_abs);
  };
  // The envelope drops the factor |sin(pi (b - a k))| that makes individual
  // terms dip; the error estimate uses the actual first two omitted terms.
  CompensatedSum<double> algebraic;
  double previous_envelope = std::numeric_limits<double>::infinity();
  double omitted = 0.0;
  for (int k = 1;; ++k) {
    const double reflected = 1.0 - beta + alpha * k;
    const double log_envelope =
        (reflected > 0.0 ? lgamma_signed(reflected).log_abs : 0.0) - std::log(pi) -
        k * log_abs_z;
    if (k > 2000 || (reflected > 1.0 && log_envelope > previous_envelope)) {
      omitted = std::max(std::fabs(term_at(k)), std::fabs(term_at(k + 1)));
      break;
    }
    previous_envelope = std::min(previous_envelope, log_envelope);
    algebraic.add(term_at(k));
    const double total = std::fabs(exponential + algebraic.value());
    if (std::exp(log_envelope) <= 0.25 * epsilon_of<double> * total) {
      omitted = std::exp(log_envelope);
      break;
    }
  }
  const double value = exponential + algebraic.value();
  const double magnitude = std::fabs(value);
  const double error = magnitude > 0.0 ? omitted / magnitude + 4.0 * epsilon_of<double> * s
                                       : std::numeric_limits<double>::infinity();
  return {value, error};
}

inline double mittag_leffler_negative(double alpha, double beta, double z, double s,
                                      const SeriesControl& ctl) {
  const double target = std::max(ctl.rtol, kMlAccuracyFloor);
  Estimated asymptotic{0.0, std::numeric_limits<double>::infinity()};
  if (s > kMlNegativeProbe) {
    asymptotic = mittag_leffler_asymptotic(alpha, beta, z);
    if (asymptotic.relative_error <= ctl.rtol) return asymptotic.value;
  }
  const Estimated taylor = mittag_leffler_taylor(alpha, beta, z, ctl);
  const Estimated& best =
      taylor.relative_error <= asymptotic.relative_error ? taylor : asymptotic;
  if (best.relative_error > target) {
    throw ConvergenceError("mittag_leffler: neither the Taylor nor the asymptotic regime reaches "
                           "the requested accuracy (estimated relative error " +
                           std::to_string(best.relative_error) + ")");
  }
  return best.value;
}

}  // namespace detail

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) = sum z^k / Gamma(alpha k + beta).
///
/// z > 0: Taylor summation up to |z|^(1/alpha) = 20, exponential asymptotic
/// expansion beyond. z < 0: whichever of the algebraic asymptotic expansion
/// (plus the oscillating exponential pair for alpha >= 1) and the Taylor sum
/// (extended precision under cancellation) carries the smaller error
/// estimate. Relative accuracy max(ctl.rtol, 1e-10) for alpha in (0, 2],
/// |z| <= 700^alpha; ConvergenceError when neither regime reaches it.
inline double mittag_leffler(double alpha, double beta, double z, const SeriesControl& ctl = {}) {
  ctl.validate();
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "mittag_leffler: alpha = " << alpha << " outside (0, 2]";
    throw DomainError(os.str());
  }
  if (!std::isfinite(beta) || !std::isfinite(z)) throw DomainError("mittag_leffler: non-finite argument");
  if (std::fabs(z) > std::pow(700.0, alpha)) {
    std::ostringstream os;
    os << "mittag_leffler: |z| = " << std::fabs(z) << " exceeds overflow guard 700^alpha";
    throw DomainError(os.str());
  }
  if (z == 0.0) return detail::reciprocal_gamma(beta);

  const double s = std::pow(std::fabs(z), 1.0 / alpha);
  double value = 0.0;
  if (z < 0.0) {
    value = detail::mittag_leffler_negative(alpha, beta, z, s, ctl);
  } else if (s > detail::kMlAsymptoticPositive) {
    value = detail::mittag_leffler_asymptotic(alpha, beta, z).value;
  } else {
    value = detail::sum_series_adaptive(
        [&]<class Real>() {
          const Real log_z = detail::rlog(Real(z));
          return [=](int k) -> detail::LogTerm<Real> {
            const auto g = detail::lgamma_signed_any<Real>(Real(alpha) * Real(k) + Real(beta));
            if (g.sign == 0) return {};
            const Real power = Real(k) * log_z;
            return {power - g.log_abs, g.sign,
                    std::fabs(static_cast<double>(power)) + std::fabs(static_cast<double>(g.log_abs))};
          };
        },
        ctl, detail::kMlAccuracyFloor, "mittag_leffler");
  }
  if (!std::isfinite(value)) throw OverflowError("mittag_leffler: result overflows double");
  return value;
}

/// Kilbas-Saigo function E_{alpha,b,c}(z) = sum a_k z^k with a_0 = 1 and
/// a_{k+1} = a_k Gamma(alpha(b k + c) + 1) / Gamma(alpha(b k + c + 1) + 1).
///
/// A pole in a denominator Gamma zeroes the coefficient (and every later one);
/// a pole in a numerator Gamma throws PoleError.
inline double kilbas_saigo(const KilbasSaigoParams& p, double z, const SeriesControl& ctl = {}) {
  ctl.validate();
  p.validate();
  if (!std::isfinite(z)) throw DomainError("kilbas_saigo: non-finite argument");
  if (z == 0.0) return 1.0;

  const int z_sign = z < 0.0 ? -1 : 1;
  const double abs_z = std::fabs(z);
  auto factory = [&]<class Real>() {
    const Real log_z = detail::rlog(Real(abs_z));
    const Real alpha(p.alpha), b(p.b), c(p.c);
    return [=, log_coef = Real(0), coef_sign = 1, coef_scale = 0.0](int k) mutable
           -> detail::LogTerm<Real> {
      if (k > 0 && coef_sign != 0) {
        const Real j(k - 1);
        const Real numerator_arg = alpha * (b * j + c) + Real(1);
        const Real denominator_arg = alpha * (b * j + c + Real(1)) + Real(1);
        const auto num = detail::lgamma_signed_any<Real>(numerator_arg);
        if (num.sign == 0) {
          std::ostringstream os;
          os << "kilbas_saigo: numerator Gamma pole at " << static_cast<double>(numerator_arg);
          throw PoleError(os.str());
        }
        const auto den = detail::lgamma_signed_any<Real>(denominator_arg);
        if (den.sign == 0) {
          coef_sign = 0;
        } else {
          log_coef += num.log_abs - den.log_abs;
          coef_sign *= num.sign * den.sign;
          coef_scale += std::fabs(static_cast<double>(num.log_abs)) +
                        std::fabs(static_cast<double>(den.log_abs));
        }
      }
      if (coef_sign == 0) return {};
      const Real power = Real(k) * log_z;
      const int sign = coef_sign * ((z_sign < 0 && (k & 1)) ? -1 : 1);
      return {log_coef + power, sign, coef_scale + std::fabs(static_cast<double>(power))};
    };
  };
  const double value =
      detail::sum_series_adaptive(factory, ctl, detail::kMlAccuracyFloor, "kilbas_saigo");
  if (!std::isfinite(value)) throw OverflowError("kilbas_saigo: result overflows double");
  return value;
}

/// Fox-Wright function Psi_{1,1}[(a, alpha_u); (b, beta_l) | z]
///   = sum_k Gamma(alpha_u k + a) / Gamma(beta_l k + b) * z^k / k!.
inline double fox_wright_psi11(const FoxWrightParams& p, double z, const SeriesControl& ctl = {}) {
  ctl.validate();
  p.validate();
  if (!std::isfinite(z)) throw DomainError("fox_wright_psi11: non-finite argument");

  auto numerator_pole = [](double arg) {
    std::ostringstream os;
    os << "fox_wright_psi11: numerator Gamma pole at " << arg;
    return PoleError(os.str());
  };
  if (z == 0.0) {
    const auto num = detail::lgamma_signed(p.a);
    if (num.sign == 0) throw numerator_pole(p.a);
    const auto den = detail::lgamma_signed(p.b);
    if (den.sign == 0) return 0.0;
    return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
  }

  const int z_sign = z < 0.0 ? -1 : 1;
  const double abs_z = std::fabs(z);
  auto factory = [&]<class Real>() {
    const Real log_z = detail::rlog(Real(abs_z));
    return [=](int k) -> detail::LogTerm<Real> {
      const Real kk(k);
      const Real numerator_arg = Real(p.alpha_u) * kk + Real(p.a);
      const auto num = detail::lgamma_signed_any<Real>(numerator_arg);
      if (num.sign == 0) throw numerator_pole(static_cast<double>(numerator_arg));
      const auto den = detail::lgamma_signed_any<Real>(Real(p.beta_l) * kk + Real(p.b));
      if (den.sign == 0) return {};
      const auto fact = detail::lgamma_signed_any<Real>(kk + Real(1));
      const Real power = kk * log_z;
      const int sign = num.sign * den.sign * ((z_sign < 0 && (k & 1)) ? -1 : 1);
      const double scale = std::fabs(static_cast<double>(num.log_abs)) +
                           std::fabs(static_cast<double>(den.log_abs)) +
                           std::fabs(static_cast<double>(fact.log_abs)) +
                           std::fabs(static_cast<double>(power));
      return {num.log_abs - den.log_abs - fact.log_abs + power, sign, scale};
    };
  };
  const double value =
      detail::sum_series_adaptive(factory, ctl, detail::kMlAccuracyFloor, "fox_wright_psi11");
  if (!std::isfinite(value)) throw OverflowError("fox_wright_psi11: result overflows double");
  return value;
}

}  // namespace memkinetics

#endif  // MEMKINETICS_SPECIALFN_HPP
