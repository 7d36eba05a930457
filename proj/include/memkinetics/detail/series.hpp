#ifndef MEMKINETICS_DETAIL_SERIES_HPP
#define MEMKINETICS_DETAIL_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "memkinetics/detail/real_math.hpp"
#include "memkinetics/errors.hpp"

namespace memkinetics {

/// Truncation policy shared by every infinite-series evaluation.
struct SeriesControl {
  double rtol = 1e-12;
  int max_terms = 10000;
  /// Successive below-tolerance terms required before the sum is accepted.
  int consecutive_small = 3;

  void validate() const {
    if (!(rtol > 0.0 && rtol < 1.0)) throw DomainError("SeriesControl: rtol must lie in (0, 1)");
    if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
    if (consecutive_small < 1) throw DomainError("SeriesControl: consecutive_small must be >= 1");
  }

  friend bool operator==(const SeriesControl&, const SeriesControl&) = default;
};

namespace detail {

/// Neumaier's variant of Kahan summation.
template <class Real>
class CompensatedSum {
 public:
  void add(Real v) {
    const Real t = sum_ + v;
    if (rabs(sum_) >= rabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

/// One series term in log form. `scale` bounds the magnitude of the pieces
/// that were combined into log_abs, so eps * scale bounds its relative error.
template <class Real>
struct LogTerm {
  Real log_abs = 0;
  int sign = 0;  // 0: the term is exactly zero
  double scale = 0.0;
};

template <class Real>
struct SeriesSum {
  Real value = 0;
  Real abs_sum = 0;
  double max_scale = 0.0;
  int terms = 0;

  /// First-order bound on the relative error from term rounding and cancellation.
  double relative_error_estimate() const {
    const double magnitude = std::fabs(static_cast<double>(value));
    const double absolute = static_cast<double>(abs_sum);
    if (absolute == 0.0) return 0.0;
    if (magnitude == 0.0) return std::numeric_limits<double>::infinity();
    return epsilon_of<Real> * (max_scale + 4.0) * absolute / magnitude;
  }
};

/// Sums terms produced by `next(k)`, k = 0, 1, ..., until `consecutive_small`
/// successive terms with k >= 4 satisfy |term| / (1 - r) <= rtol * |partial sum|,
/// r being the ratio of the last two term magnitudes (the geometric tail bound;
/// a term that grew never counts as small).
template <class Real, class Next>
SeriesSum<Real> sum_log_terms(Next&& next, const SeriesControl& ctl, std::string_view what) {
  CompensatedSum<Real> acc;
  SeriesSum<Real> out;
  int small_run = 0;
  Real previous_abs = 0;
  for (int k = 0; k < ctl.max_terms; ++k) {
    const LogTerm<Real> term = next(k);
    Real v = 0;
    if (term.sign != 0) {
      v = rexp(term.log_abs);
      if (term.sign < 0) v = -v;
    }
    acc.add(v);
    out.abs_sum += rabs(v);
    out.max_scale = std::max(out.max_scale, term.scale);
    const Real partial = acc.value();
    const Real current_abs = rabs(v);
    Real tail = current_abs;
    if (current_abs > Real(0) && previous_abs > Real(0)) {
      const Real ratio = current_abs / previous_abs;
      tail = ratio < Real(1) ? current_abs / (Real(1) - ratio)
                             : Real(std::numeric_limits<double>::infinity());
    }
    previous_abs = current_abs;
    if (k >= 4 && tail <= Real(ctl.rtol) * rabs(partial)) {
      if (++small_run >= ctl.consecutive_small) {
        out.value = partial;
        out.terms = k + 1;
        return out;
      }
    } else {
      small_run = 0;
    }
  }
  throw ConvergenceError(std::string(what) + ": no convergence within " +
                         std::to_string(ctl.max_terms) + " terms");
}

/// Sums a log-term series in double, and repeats the summation in the wide
/// type when cancellation or term rounding would exceed ctl.rtol.
///
/// `factory` is a generic callable; `factory.template operator()<Real>()`
/// returns a fresh (possibly stateful) term generator for that precision.
/// Throws ConvergenceError when even the wide sum misses
/// max(ctl.rtol, accuracy_floor).
template <class Factory>
double sum_series_adaptive(Factory&& factory, const SeriesControl& ctl, double accuracy_floor,
                           std::string_view what) {
  const auto narrow =
      sum_log_terms<double>(factory.template operator()<double>(), ctl, what);
  if (narrow.relative_error_estimate() <= ctl.rtol) return narrow.value;

  const auto wide =
      sum_log_terms<wide_real>(factory.template operator()<wide_real>(), ctl, what);
  const double estimate = wide.relative_error_estimate();
  if (estimate > std::max(ctl.rtol, accuracy_floor)) {
    throw ConvergenceError(std::string(what) +
                           ": cancellation exceeds extended precision (estimated relative "
                           "error " +
                           std::to_string(estimate) + ")");
  }
  return static_cast<double>(wide.value);
}

}  // namespace detail
}  // namespace memkinetics

#endif  // MEMKINETICS_DETAIL_SERIES_HPP
