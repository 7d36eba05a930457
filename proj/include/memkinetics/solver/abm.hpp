#ifndef MEMKINETICS_SOLVER_ABM_HPP
#define MEMKINETICS_SOLVER_ABM_HPP

// Adams-Bashforth-Moulton predictor-corrector (PECE, one corrector pass) for
// Caputo systems D^alpha y = f(t, y) on a uniform grid. Product-rectangle
// predictor, product-trapezoid corrector, starting values from the initial
// conditions alone.

#include <cmath>
#include <cstddef>
#include <sstream>
#include <span>
#include <vector>

#include "memkinetics/caputo.hpp"
#include "memkinetics/errors.hpp"
#include "memkinetics/solver/problem.hpp"

namespace memkinetics {

namespace detail {

inline constexpr double kAbmOverflow = 1e300;
inline constexpr int kMaxCommensurateDenominator = 100;

/// Solves a `dim`-component system in which every component has order alpha.
/// `initial[k * dim + i]` is the k-th derivative at 0 of component i, k < n.
/// `rhs(t, y, out)` fills out[0..dim) from y[0..dim). Returns the flattened
/// history y[j * dim + i].
template <class Rhs>
std::vector<double> abm_system(const FractionalOrder& ord, std::size_t dim,
                               std::span<const double> initial, const TrajectoryGrid& grid,
                               Rhs&& rhs) {
  const double alpha = ord.alpha();
  const int n = ord.n();
  const std::size_t steps = static_cast<std::size_t>(grid.N);
  const double h = grid.h();

  const auto pow_a = integer_powers(steps + 2, alpha);
  const auto pow_a1 = integer_powers(steps + 2, alpha + 1.0);
  const double pred_scale = std::pow(h, alpha) / std::tgamma(alpha + 1.0);
  const double corr_scale = std::pow(h, alpha) / std::tgamma(alpha + 2.0);

  std::vector<double> y((steps + 1) * dim);
  std::vector<double> f((steps + 1) * dim);
  std::vector<double> taylor(dim), pred(dim), corr(dim), f_pred(dim);

  for (std::size_t i = 0; i < dim; ++i) y[i] = initial[i];
  rhs(0.0, std::span<const double>(y.data(), dim), std::span<double>(f.data(), dim));

  for (std::size_t j = 0; j < steps; ++j) {
    const double t_next = grid.t(j + 1);
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = 0.0;
      double tk = 1.0;
      double fact = 1.0;
      for (int k = 0; k < n; ++k) {
        acc += tk / fact * initial[k * dim + i];
        tk *= t_next;
        fact *= k + 1;
      }
      taylor[i] = acc;
      pred[i] = 0.0;
      corr[i] = 0.0;
    }
    for (std::size_t k = 0; k <= j; ++k) {
      const double b = pow_a[j + 1 - k] - pow_a[j - k];
      const double a = trapezoid_weight(j + 1, k, alpha, pow_a1, pow_a);
      const double* fk = f.data() + k * dim;
      for (std::size_t i = 0; i < dim; ++i) {
        pred[i] += b * fk[i];
        corr[i] += a * fk[i];
      }
    }
    for (std::size_t i = 0; i < dim; ++i) pred[i] = taylor[i] + pred_scale * pred[i];
    rhs(t_next, std::span<const double>(pred), std::span<double>(f_pred));

    double* y_next = y.data() + (j + 1) * dim;
    for (std::size_t i = 0; i < dim; ++i) {
      y_next[i] = taylor[i] + corr_scale * (f_pred[i] + corr[i]);
      if (!(std::fabs(y_next[i]) <= kAbmOverflow)) {
        std::ostringstream os;
        os << "solve_abm: |Y| exceeds " << kAbmOverflow << " at t = " << t_next;
        throw OverflowError(os.str());
      }
    }
    rhs(t_next, std::span<const double>(y_next, dim), std::span<double>(f.data() + (j + 1) * dim, dim));
  }
  return y;
}

struct Commensurate {
  int q = 1;
  int p_alpha = 1;
  int p_beta = 1;
};

/// Smallest q <= 100 with alpha = p_alpha / q and beta = p_beta / q.
inline Commensurate commensurate_orders(double alpha, double beta) {
  for (int q = 1; q <= kMaxCommensurateDenominator; ++q) {
    const double pa = std::round(alpha * q);
    const double pb = std::round(beta * q);
    if (std::fabs(alpha * q - pa) <= 1e-9 * q && std::fabs(beta * q - pb) <= 1e-9 * q && pb >= 1) {
      return {q, static_cast<int>(pa), static_cast<int>(pb)};
    }
  }
  std::ostringstream os;
  os << "solve_abm: orders " << alpha << " and " << beta
     << " share no denominator q <= " << kMaxCommensurateDenominator;
  throw NonCommensurateError(os.str());
}

}  // namespace detail

/// Numerical solution of the problem by the ABM scheme. Two-term problems are
/// rewritten as a system of order-1/q equations y_1 = Y, y_{i+1} = D^(1/q) y_i,
/// D^(1/q) y_{p_alpha} = lam Y + mu y_{p_beta + 1}.
inline Trajectory solve_abm(const CauchyProblem& prob, const TrajectoryGrid& grid) {
  prob.validate();
  grid.validate();
  const double forcing = prob.forcing_const;
  const double lam = prob.lam;
  const double pe = prob.price_exponent;
  auto coefficient = [lam, pe](double t) { return pe == 0.0 ? lam : lam * std::pow(t, pe); };

  Trajectory out{grid, std::vector<double>(grid.size()), Method::abm};

  if (!prob.secondary_ord) {
    auto rhs = [&](double t, std::span<const double> y, std::span<double> f) {
      f[0] = forcing + coefficient(t) * y[0];
    };
    const auto y = detail::abm_system(prob.ord, 1, prob.initial_values, grid, rhs);
    out.values = y;
    return out;
  }

  const auto c = detail::commensurate_orders(prob.ord.alpha(), prob.secondary_ord->alpha());
  const std::size_t dim = static_cast<std::size_t>(c.p_alpha);
  const std::size_t beta_slot = static_cast<std::size_t>(c.p_beta);
  const FractionalOrder gamma(1.0 / c.q);

  // y_{i+1}(0) = Y^(k)(0) when i / q = k is an integer, 0 otherwise.
  std::vector<double> initial(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i % static_cast<std::size_t>(c.q) == 0) initial[i] = prob.initial_values[i / c.q];
  }
  auto rhs = [&](double t, std::span<const double> y, std::span<double> f) {
    for (std::size_t i = 0; i + 1 < dim; ++i) f[i] = y[i + 1];
    f[dim - 1] = forcing + coefficient(t) * y[0] + prob.mu * y[beta_slot];
  };
  const auto y = detail::abm_system(gamma, dim, initial, grid, rhs);
  for (std::size_t j = 0; j < grid.size(); ++j) out.values[j] = y[j * dim];
  return out;
}

}  // namespace memkinetics

#endif  // MEMKINETICS_SOLVER_ABM_HPP
