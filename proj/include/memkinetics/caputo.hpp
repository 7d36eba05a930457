#ifndef MEMKINETICS_CAPUTO_HPP
#define MEMKINETICS_CAPUTO_HPP

// Left-sided Caputo derivative and weakly singular convolution integrals on
// uniformly sampled functions starting at t = 0.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "memkinetics/errors.hpp"
#include "memkinetics/specialfn.hpp"

namespace memkinetics {

/// Order alpha in (0, 2] with the count n of initial values it needs:
/// n = ceil(alpha), so n - 1 < alpha <= n and integer orders are classical.
class FractionalOrder {
 public:
  FractionalOrder() = default;
  explicit FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 2.0) || !std::isfinite(alpha)) {
      std::ostringstream os;
      os << "FractionalOrder: alpha = " << alpha << " outside (0, 2]";
      throw DomainError(os.str());
    }
    n_ = static_cast<int>(std::ceil(alpha));
  }

  double alpha() const { return alpha_; }
  int n() const { return n_; }
  bool is_integer() const { return alpha_ == static_cast<double>(n_); }

  friend bool operator==(const FractionalOrder&, const FractionalOrder&) = default;

 private:
  double alpha_ = 1.0;
  int n_ = 1;
};

/// Samples values[j] = Y(t0 + j h). t0 is 0 throughout the library.
struct SampledFunction {
  double t0 = 0.0;
  double h = 1.0;
  std::vector<double> values;
};

namespace detail {

inline void check_samples(std::size_t size, double h, std::size_t at_index, std::size_t needed,
                          const char* what) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError(std::string(what) + ": step h must be finite and > 0");
  }
  if (at_index < 1) throw DomainError(std::string(what) + ": at_index must be >= 1");
  if (size < needed || at_index >= size) {
    std::ostringstream os;
    os << what << ": " << size << " samples cannot serve index " << at_index << " (need at least "
       << needed << ")";
    throw InsufficientSamplesError(os.str());
  }
}

/// Powers m^p for m = 0..count-1.
inline std::vector<double> integer_powers(std::size_t count, double p) {
  std::vector<double> out(count);
  for (std::size_t m = 0; m < count; ++m) out[m] = m == 0 ? (p > 0.0 ? 0.0 : 1.0) : std::pow(double(m), p);
  return out;
}

/// L1 approximation of the order-`alpha` (0 < alpha < 1) Caputo derivative of
/// the piecewise-linear interpolant of `v` at index j:
///   h^-alpha / Gamma(2 - alpha) * sum_{k<j} b_k (v[j-k] - v[j-k-1]),
///   b_k = (k+1)^(1-alpha) - k^(1-alpha).
inline double l1_at(std::span<const double> v, double h, double alpha, std::size_t j,
                    std::span<const double> powers) {
  double acc = 0.0;
  for (std::size_t k = 0; k < j; ++k) {
    acc += (powers[k + 1] - powers[k]) * (v[j - k] - v[j - k - 1]);
  }
  return acc * std::pow(h, -alpha) / std::tgamma(2.0 - alpha);
}

/// Second-order first-derivative samples: one-sided at both ends, centered inside.
inline std::vector<double> first_derivative(std::span<const double> v, double h) {
  const std::size_t size = v.size();
  std::vector<double> d(size);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < size; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[size - 1] = (3.0 * v[size - 1] - 4.0 * v[size - 2] + v[size - 3]) / (2.0 * h);
  return d;
}

inline double second_derivative_at(std::span<const double> v, double h, std::size_t j) {
  if (j + 1 < v.size()) return (v[j + 1] - 2.0 * v[j] + v[j - 1]) / (h * h);
  if (v.size() < 4) {
    throw InsufficientSamplesError("caputo_derivative: alpha = 2 at the last sample needs 4 samples");
  }
  return (2.0 * v[j] - 5.0 * v[j - 1] + 4.0 * v[j - 2] - v[j - 3]) / (h * h);
}

inline double first_derivative_at(std::span<const double> v, double h, std::size_t j) {
  if (j + 1 < v.size()) return (v[j + 1] - v[j - 1]) / (2.0 * h);
  return (3.0 * v[j] - 4.0 * v[j - 1] + v[j - 2]) / (2.0 * h);
}

/// Product-trapezoid weights of int_0^{t_j} (t_j - tau)^(alpha-1) g(tau) dtau,
/// without the common factor h^alpha / (alpha (alpha + 1)).
inline double trapezoid_weight(std::size_t j, std::size_t k, double alpha,
                               std::span<const double> pow_a1, std::span<const double> pow_a) {
  if (k == j) return 1.0;
  if (k == 0) return pow_a1[j - 1] - (double(j) - 1.0 - alpha) * pow_a[j];
  const std::size_t m = j - k;
  return pow_a1[m + 1] - 2.0 * pow_a1[m] + pow_a1[m - 1];
}

}  // namespace detail

/// Caputo derivative (D^alpha_{0+} f)(t_j) of uniformly sampled f.
///
/// 0 < alpha < 1: L1 scheme, error O(h^(2 - alpha)) for smooth f.
/// 1 < alpha < 2: L1 of order alpha - 1 applied to second-order difference
/// derivatives, error O(h^(3 - alpha)) for smooth f.
/// alpha = 1, 2: classical second-order differences.
inline double caputo_derivative(std::span<const double> values, double h,
                                const FractionalOrder& ord, std::size_t at_index) {
  const double alpha = ord.alpha();
  const std::size_t needed = ord.n() == 1 && !ord.is_integer() ? 2 : 3;
  detail::check_samples(values.size(), h, at_index, needed, "caputo_derivative");

  if (ord.is_integer()) {
    if (ord.n() == 1) return detail::first_derivative_at(values, h, at_index);
    return detail::second_derivative_at(values, h, at_index);
  }
  if (alpha < 1.0) {
    const auto powers = detail::integer_powers(at_index + 1, 1.0 - alpha);
    return detail::l1_at(values, h, alpha, at_index, powers);
  }
  const auto derivative = detail::first_derivative(values, h);
  const auto powers = detail::integer_powers(at_index + 1, 2.0 - alpha);
  return detail::l1_at(derivative, h, alpha - 1.0, at_index, powers);
}

inline double caputo_derivative(const SampledFunction& f, const FractionalOrder& ord,
                                std::size_t at_index) {
  return caputo_derivative(f.values, f.h, ord, at_index);
}

/// Caputo derivative at every index 1..N in one pass; entry 0 is NaN (the
/// operator is not evaluated at the left endpoint).
inline std::vector<double> caputo_derivative_all(std::span<const double> values, double h,
                                                 const FractionalOrder& ord) {
  const std::size_t size = values.size();
  const std::size_t needed = ord.n() == 1 && !ord.is_integer() ? 2 : 3;
  detail::check_samples(size, h, size - 1, needed, "caputo_derivative_all");
  std::vector<double> out(size, std::numeric_limits<double>::quiet_NaN());
  if (ord.is_integer()) {
    for (std::size_t j = 1; j < size; ++j) out[j] = caputo_derivative(values, h, ord, j);
    return out;
  }
  const double alpha = ord.alpha();
  if (alpha < 1.0) {
    const auto powers = detail::integer_powers(size, 1.0 - alpha);
    for (std::size_t j = 1; j < size; ++j) out[j] = detail::l1_at(values, h, alpha, j, powers);
    return out;
  }
  const auto derivative = detail::first_derivative(values, h);
  const auto powers = detail::integer_powers(size, 2.0 - alpha);
  for (std::size_t j = 1; j < size; ++j) {
    out[j] = detail::l1_at(derivative, h, alpha - 1.0, j, powers);
  }
  return out;
}

/// Product-trapezoid rule for int_0^{t_j} (t_j - tau)^(alpha - 1) g(tau) dtau:
/// g linear between samples, kernel integrated exactly, no 1/Gamma(alpha)
/// normalisation. Error O(h^2) for smooth g. Holds the power tables for all
/// indices up to `max_index` so repeated evaluations stay O(j).
class ProductTrapezoid {
 public:
  ProductTrapezoid(double alpha, std::size_t max_index) : alpha_(alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw DomainError("rl_fractional_integral: alpha must be finite and > 0");
    }
    pow_a1_ = detail::integer_powers(max_index + 2, alpha + 1.0);
    pow_a_ = detail::integer_powers(max_index + 1, alpha);
  }

  /// Integral at index j of samples g[0..j] spaced h apart.
  double integrate(std::span<const double> g, double h, std::size_t j) const {
    detail::check_samples(g.size(), h, j, 2, "rl_fractional_integral");
    if (j + 1 >= pow_a1_.size()) {
      throw InsufficientSamplesError("rl_fractional_integral: index beyond the prepared weights");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k <= j; ++k) acc += weight(j, k) * g[k];
    return acc * std::pow(h, alpha_) / (alpha_ * (alpha_ + 1.0));
  }

  /// Weight of sample k in the integral at index j, without the common factor
  /// h^alpha / (alpha (alpha + 1)).
  double weight(std::size_t j, std::size_t k) const {
    return detail::trapezoid_weight(j, k, alpha_, pow_a1_, pow_a_);
  }

  double alpha() const { return alpha_; }

 private:
  double alpha_;
  std::vector<double> pow_a1_;
  std::vector<double> pow_a_;
};

/// int_0^{t_j} (t_j - tau)^(alpha - 1) g(tau) dtau by the product-trapezoid rule.
inline double rl_fractional_integral(std::span<const double> values, double h, double alpha,
                                     std::size_t at_index) {
  return ProductTrapezoid(alpha, at_index).integrate(values, h, at_index);
}

inline double rl_fractional_integral(const SampledFunction& f, double alpha, std::size_t at_index) {
  return rl_fractional_integral(f.values, f.h, alpha, at_index);
}

/// Convolution integral at every index; entry 0 is 0.
inline std::vector<double> rl_fractional_integral_all(std::span<const double> values, double h,
                                                      double alpha) {
  if (values.size() < 2) {
    throw InsufficientSamplesError("rl_fractional_integral_all: need at least 2 samples");
  }
  const ProductTrapezoid rule(alpha, values.size() - 1);
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t j = 1; j < values.size(); ++j) out[j] = rule.integrate(values, h, j);
  return out;
}

}  // namespace memkinetics

#endif  // MEMKINETICS_CAPUTO_HPP
