#ifndef MEMKINETICS_SOLVER_ANALYTIC_HPP
#define MEMKINETICS_SOLVER_ANALYTIC_HPP

// Closed-form trajectories of the linear Caputo problems, built from the
// Mittag-Leffler, Kilbas-Saigo and Fox-Wright functions.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "memkinetics/caputo.hpp"
#include "memkinetics/errors.hpp"
#include "memkinetics/solver/problem.hpp"
#include "memkinetics/specialfn.hpp"

namespace memkinetics {

namespace detail {

inline void check_single_term(const CauchyProblem& prob, const char* what) {
  prob.validate();
  if (prob.secondary_ord) {
    throw DomainError(std::string(what) + ": problem has a second fractional term");
  }
}

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// sum_k Y_k t^k E_{alpha,k+1}(x t^alpha): the homogeneous solution of
/// D^alpha Y = x Y.
inline double ml_homogeneous(const FractionalOrder& ord, const std::vector<double>& y0, double x,
                             double t, const SeriesControl& ctl) {
  if (t == 0.0) return y0[0];
  const double z = x * std::pow(t, ord.alpha());
  double acc = 0.0;
  for (int k = 0; k < ord.n(); ++k) {
    if (y0[k] == 0.0) continue;
    acc += y0[k] * std::pow(t, k) * mittag_leffler(ord.alpha(), k + 1.0, z, ctl);
  }
  return acc;
}

template <class Fn>
Trajectory tabulate(const TrajectoryGrid& grid, Fn&& value_at, const char* what) {
  grid.validate();
  Trajectory out{grid, std::vector<double>(grid.size()), Method::analytic};
  for (std::size_t j = 0; j < grid.size(); ++j) out.values[j] = value_at(grid.t(j));
  require_finite(out, what);
  return out;
}

}  // namespace detail

/// Y(t) = sum_{k<n} Y_k t^k E_{alpha,k+1}(lam t^alpha).
inline Trajectory analytic_growth(const CauchyProblem& prob, const TrajectoryGrid& grid,
                                  const SeriesControl& ctl = {}) {
  detail::check_single_term(prob, "analytic_growth");
  if (prob.price_exponent != 0.0 || prob.forcing_const != 0.0 || prob.decay_coeff != 0.0) {
    throw DomainError("analytic_growth: needs a constant coefficient and no forcing");
  }
  return detail::tabulate(
      grid,
      [&](double t) {
        return detail::ml_homogeneous(prob.ord, prob.initial_values, prob.lam, t, ctl);
      },
      "analytic_growth");
}

/// Coefficient lam t^beta:
///   Y(t) = sum_{k<n} Y_k / k! t^k E_{alpha, 1 + beta/alpha, (beta + k)/alpha}(lam t^(alpha + beta)).
inline Trajectory analytic_power_price(const CauchyProblem& prob, const TrajectoryGrid& grid,
                                       const SeriesControl& ctl = {}) {
  detail::check_single_term(prob, "analytic_power_price");
  if (prob.forcing_const != 0.0 || prob.decay_coeff != 0.0) {
    throw DomainError("analytic_power_price: forcing is not supported");
  }
  const double alpha = prob.ord.alpha();
  const double beta = prob.price_exponent;
  return detail::tabulate(
      grid,
      [&](double t) {
        if (t == 0.0) return prob.initial_values[0];
        const double z = prob.lam * std::pow(t, alpha + beta);
        double acc = 0.0;
        for (int k = 0; k < prob.ord.n(); ++k) {
          if (prob.initial_values[k] == 0.0) continue;
          const KilbasSaigoParams p{alpha, 1.0 + beta / alpha, (beta + k) / alpha};
          acc += prob.initial_values[k] / detail::factorial(k) * std::pow(t, k) *
                 kilbas_saigo(p, z, ctl);
        }
        return acc;
      },
      "analytic_power_price");
}

namespace detail {

/// Fundamental solution Y_j(t) of D^alpha Y - mu D^beta Y = lam Y
/// (gamma = alpha - beta, m = ceil(beta)):
///
///   Y_j(t) = sum_k lam^k t^(alpha k + j) / k! * ( Psi[(k+1,1); (alpha k + j + 1, gamma) | mu t^gamma]
///            - [j < m] mu t^gamma Psi[(k+1,1); (alpha k + j + 1 + gamma, gamma) | mu t^gamma] ).
inline double two_param_basis(const CauchyProblem& prob, int j, double t, const SeriesControl& ctl) {
  const double alpha = prob.ord.alpha();
  const double gamma = alpha - prob.secondary_ord->alpha();
  const bool memory_term = j < prob.secondary_ord->n();
  const double tg = std::pow(t, gamma);
  const double z = prob.mu * tg;
  const double log_t = std::log(t);
  const double log_lam = prob.lam == 0.0 ? 0.0 : std::log(std::fabs(prob.lam));

  auto next = [&](int k) -> LogTerm<double> {
    if (k > 0 && prob.lam == 0.0) return {};
    double psi = fox_wright_psi11({k + 1.0, 1.0, alpha * k + j + 1.0, gamma}, z, ctl);
    if (memory_term) {
      psi -= z * fox_wright_psi11({k + 1.0, 1.0, alpha * k + j + 1.0 + gamma, gamma}, z, ctl);
    }
    if (psi == 0.0) return {};
    int sign = psi < 0.0 ? -1 : 1;
    if (prob.lam < 0.0 && k % 2 == 1) sign = -sign;
    const double log_abs =
        k * log_lam + (alpha * k + j) * log_t - std::lgamma(k + 1.0) + std::log(std::fabs(psi));
    return {log_abs, sign, 0.0};
  };
  return sum_log_terms<double>(next, ctl, "analytic_two_param").value;
}

}  // namespace detail

/// Two-term memory equation D^alpha Y - mu D^beta Y = lam Y, alpha > beta > 0:
/// Y(t) = sum_{j<n} Y_j Y_j(t) with the Fox-Wright basis above.
inline Trajectory analytic_two_param(const CauchyProblem& prob, const TrajectoryGrid& grid,
                                     const SeriesControl& ctl = {}) {
  prob.validate();
  if (!prob.secondary_ord) throw DomainError("analytic_two_param: secondary order missing");
  if (prob.price_exponent != 0.0 || prob.forcing_const != 0.0 || prob.decay_coeff != 0.0) {
    throw DomainError("analytic_two_param: needs a constant coefficient and no forcing");
  }
  return detail::tabulate(
      grid,
      [&](double t) {
        if (t == 0.0) return prob.initial_values[0];
        double acc = 0.0;
        for (int j = 0; j < prob.ord.n(); ++j) {
          if (prob.initial_values[j] == 0.0) continue;
          acc += prob.initial_values[j] * detail::two_param_basis(prob, j, t, ctl);
        }
        return acc;
      },
      "analytic_two_param");
}

namespace detail {

inline void check_fixed_assets(const CauchyProblem& prob, const char* what) {
  check_single_term(prob, what);
  if (!(prob.decay_coeff > 0.0)) throw DomainError(std::string(what) + ": decay_coeff must be > 0");
  if (prob.price_exponent != 0.0) {
    throw DomainError(std::string(what) + ": price_exponent must be 0");
  }
}

}  // namespace detail

/// D^alpha K = A - B K:
///   K(t) = (A/B)(1 - E_{alpha,1}(-B t^alpha)) + sum_{k<n} K_k t^k E_{alpha,k+1}(-B t^alpha).
inline Trajectory analytic_fixed_assets(const CauchyProblem& prob, const TrajectoryGrid& grid,
                                        const SeriesControl& ctl = {}) {
  detail::check_fixed_assets(prob, "analytic_fixed_assets");
  const double a = prob.forcing_const;
  const double b = prob.decay_coeff;
  const double alpha = prob.ord.alpha();
  return detail::tabulate(
      grid,
      [&](double t) {
        if (t == 0.0) return prob.initial_values[0];
        const double forced =
            a == 0.0 ? 0.0
                     : a / b * (1.0 - mittag_leffler(alpha, 1.0, -b * std::pow(t, alpha), ctl));
        return forced + detail::ml_homogeneous(prob.ord, prob.initial_values, -b, t, ctl);
      },
      "analytic_fixed_assets");
}

/// Same solution in convolution form,
///   K(t) = A int_0^t (t - tau)^(alpha-1) E_{alpha,alpha}(-B (t - tau)^alpha) dtau + homogeneous,
/// with the integral done by the product-trapezoid rule on the grid. Its
/// agreement with analytic_fixed_assets is a check of the term-by-term
/// integration, not a more accurate evaluator.
inline Trajectory analytic_fixed_assets_convolution(const CauchyProblem& prob,
                                                    const TrajectoryGrid& grid,
                                                    const SeriesControl& ctl = {}) {
  detail::check_fixed_assets(prob, "analytic_fixed_assets_convolution");
  grid.validate();
  const double alpha = prob.ord.alpha();
  const double b = prob.decay_coeff;
  const std::size_t size = grid.size();

  // Kernel samples E_{alpha,alpha}(-B xi^alpha) at xi = t_m; sample k of the
  // integrand at t_j is kernel[j - k].
  std::vector<double> kernel(size);
  for (std::size_t m = 0; m < size; ++m) {
    kernel[m] = mittag_leffler(alpha, alpha, -b * std::pow(grid.t(m), alpha), ctl);
  }
  const ProductTrapezoid rule(alpha, size - 1);
  const double h = grid.h();

  Trajectory out{grid, std::vector<double>(size), Method::analytic};
  std::vector<double> g;
  g.reserve(size);
  for (std::size_t j = 0; j < size; ++j) {
    const double t = grid.t(j);
    double forced = 0.0;
    if (j > 0 && prob.forcing_const != 0.0) {
      g.assign(kernel.rbegin() + static_cast<std::ptrdiff_t>(size - 1 - j), kernel.rend());
      forced = prob.forcing_const * rule.integrate(g, h, j);
    }
    out.values[j] = forced + detail::ml_homogeneous(prob.ord, prob.initial_values, -b, t, ctl);
  }
  detail::require_finite(out, "analytic_fixed_assets_convolution");
  return out;
}

/// Picks the closed form that matches the problem's structure.
inline Trajectory solve_analytic(const CauchyProblem& prob, const TrajectoryGrid& grid,
                                 const SeriesControl& ctl = {}) {
  if (prob.secondary_ord) return analytic_two_param(prob, grid, ctl);
  if (prob.decay_coeff > 0.0) return analytic_fixed_assets(prob, grid, ctl);
  if (prob.forcing_const != 0.0) {
    throw DomainError("solve_analytic: forcing without a decay term has no closed form here");
  }
  if (prob.price_exponent != 0.0) return analytic_power_price(prob, grid, ctl);
  return analytic_growth(prob, grid, ctl);
}

}  // namespace memkinetics

#endif  // MEMKINETICS_SOLVER_ANALYTIC_HPP
