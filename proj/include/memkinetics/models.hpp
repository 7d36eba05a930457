#ifndef MEMKINETICS_MODELS_HPP
#define MEMKINETICS_MODELS_HPP

// Economic scenarios and their translation to CauchyProblem.

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "memkinetics/caputo.hpp"
#include "memkinetics/errors.hpp"
#include "memkinetics/solver/problem.hpp"

namespace memkinetics {

/// Output Y with accelerator memory of order alpha; lam = m P L.
struct Growth {
  double alpha = 1.0;
  double m = 0.2;  ///< net-investment norm, 0 < m < 1
  double P = 1.0;  ///< constant price
  double L = 1.0;  ///< accelerator rate
  std::vector<double> initial_values{1.0};
  friend bool operator==(const Growth&, const Growth&) = default;
};

/// Price P(t) = p t^beta, so the coefficient is lam t^beta with lam = m p L.
struct PowerPrice {
  double alpha = 1.0;
  double beta = 0.0;
  double m = 0.2;
  double p = 1.0;
  double L = 1.0;
  std::vector<double> initial_values{1.0};
  friend bool operator==(const PowerPrice&, const PowerPrice&) = default;
};

/// D^alpha Y - mu D^beta Y = lam Y.
struct TwoParamMemory {
  double alpha = 1.0;
  double beta = 0.5;
  double mu = 0.0;
  double lam = 0.0;
  std::vector<double> initial_values{1.0};
  friend bool operator==(const TwoParamMemory&, const TwoParamMemory&) = default;
};

/// D^alpha P = R P.
struct Inflation {
  double alpha = 1.0;
  double R = 0.0;
  std::vector<double> initial_prices{1.0};
  friend bool operator==(const Inflation&, const Inflation&) = default;
};

/// D^alpha K = A - B K: A is the constant investment flow, B the disposal
/// coefficient.
struct FixedAssets {
  double alpha = 1.0;
  double A = 0.0;
  double B = 1.0;
  std::vector<double> initial_assets{0.0};
  friend bool operator==(const FixedAssets&, const FixedAssets&) = default;
};

using ScenarioSpec = std::variant<Growth, PowerPrice, TwoParamMemory, Inflation, FixedAssets>;

/// Config-file tag of each scenario.
inline const char* scenario_name(const ScenarioSpec& spec) {
  static constexpr const char* names[] = {"growth", "power_price", "two_param_memory", "inflation",
                                          "fixed_assets"};
  return names[spec.index()];
}

namespace detail {

class Violations {
 public:
  void check(bool ok, const std::string& message) {
    if (!ok) list_.push_back(message);
  }

  void order(double alpha, const char* name) {
    check(std::isfinite(alpha) && alpha > 0.0 && alpha <= 2.0,
          std::string(name) + " must lie in (0, 2]");
  }

  void finite(double v, const char* name) { check(std::isfinite(v), std::string(name) + " must be finite"); }

  void initial(double alpha, const std::vector<double>& values, const char* name) {
    if (!(alpha > 0.0 && alpha <= 2.0)) return;
    const auto n = static_cast<std::size_t>(std::ceil(alpha));
    check(values.size() == n, std::string(name) + " needs " + std::to_string(n) + " entries for alpha = " +
                                  std::to_string(alpha) + ", got " + std::to_string(values.size()));
    for (double v : values) {
      if (!std::isfinite(v)) {
        check(false, std::string(name) + " must be finite");
        break;
      }
    }
  }

  void raise_if_any(const char* scenario) const {
    if (list_.empty()) return;
    std::string msg = std::string(scenario) + ": ";
    for (std::size_t i = 0; i < list_.size(); ++i) msg += (i ? "; " : "") + list_[i];
    throw ValidationError(msg, list_);
  }

 private:
  std::vector<std::string> list_;
};

inline CauchyProblem single_term(double alpha, double lam, std::vector<double> initial) {
  CauchyProblem prob;
  prob.ord = FractionalOrder(alpha);
  prob.lam = lam;
  prob.initial_values = std::move(initial);
  return prob;
}

}  // namespace detail

inline CauchyProblem compile(const Growth& s) {
  detail::Violations v;
  v.order(s.alpha, "alpha");
  v.check(s.m > 0.0 && s.m < 1.0, "m must lie in (0, 1)");
  v.check(s.P > 0.0 && std::isfinite(s.P), "P must be finite and > 0");
  v.check(s.L > 0.0 && std::isfinite(s.L), "L must be finite and > 0");
  v.initial(s.alpha, s.initial_values, "initial_values");
  v.raise_if_any("growth");
  return detail::single_term(s.alpha, s.m * s.P * s.L, s.initial_values);
}

inline CauchyProblem compile(const PowerPrice& s) {
  detail::Violations v;
  v.order(s.alpha, "alpha");
  v.check(s.beta >= 0.0 && std::isfinite(s.beta), "beta must be finite and >= 0");
  v.check(s.m > 0.0 && s.m < 1.0, "m must lie in (0, 1)");
  v.check(s.p > 0.0 && std::isfinite(s.p), "p must be finite and > 0");
  v.check(s.L > 0.0 && std::isfinite(s.L), "L must be finite and > 0");
  v.initial(s.alpha, s.initial_values, "initial_values");
  v.raise_if_any("power_price");
  auto prob = detail::single_term(s.alpha, s.m * s.p * s.L, s.initial_values);
  prob.price_exponent = s.beta;
  return prob;
}

inline CauchyProblem compile(const TwoParamMemory& s) {
  detail::Violations v;
  v.order(s.alpha, "alpha");
  v.check(std::isfinite(s.beta) && s.beta > 0.0 && s.beta < s.alpha, "need alpha > beta > 0");
  v.finite(s.mu, "mu");
  v.finite(s.lam, "lam");
  v.initial(s.alpha, s.initial_values, "initial_values");
  v.raise_if_any("two_param_memory");
  auto prob = detail::single_term(s.alpha, s.lam, s.initial_values);
  prob.secondary_ord = FractionalOrder(s.beta);
  prob.mu = s.mu;
  return prob;
}

inline CauchyProblem compile(const Inflation& s) {
  detail::Violations v;
  v.order(s.alpha, "alpha");
  v.finite(s.R, "R");
  v.initial(s.alpha, s.initial_prices, "initial_prices");
  v.raise_if_any("inflation");
  return detail::single_term(s.alpha, s.R, s.initial_prices);
}

inline CauchyProblem compile(const FixedAssets& s) {
  detail::Violations v;
  v.order(s.alpha, "alpha");
  v.finite(s.A, "A");
  v.check(s.B > 0.0 && std::isfinite(s.B), "B must be finite and > 0");
  v.initial(s.alpha, s.initial_assets, "initial_assets");
  v.raise_if_any("fixed_assets");
  auto prob = detail::single_term(s.alpha, -s.B, s.initial_assets);
  prob.forcing_const = s.A;
  prob.decay_coeff = s.B;
  return prob;
}

inline CauchyProblem compile(const ScenarioSpec& spec) {
  return std::visit([](const auto& s) { return compile(s); }, spec);
}

/// Investment I(t_j) and income Q(t_j) = price(t_j) Y(t_j), I = m Q.
struct DerivedSeries {
  std::vector<double> investment;
  std::vector<double> income;
};

/// Defined for the scenarios that carry a price and an investment norm
/// (Growth, PowerPrice); the others throw DomainError.
inline DerivedSeries derived_series(const ScenarioSpec& spec, const Trajectory& traj) {
  if (traj.values.size() != traj.grid.size()) {
    throw DomainError("derived_series: trajectory has " + std::to_string(traj.values.size()) +
                      " samples for a grid of " + std::to_string(traj.grid.size()));
  }
  double m = 0.0;
  auto price = [&](double t) -> double {
    if (const auto* g = std::get_if<Growth>(&spec)) return g->P;
    const auto& pp = std::get<PowerPrice>(spec);
    return pp.beta == 0.0 ? pp.p : pp.p * std::pow(t, pp.beta);
  };
  if (const auto* g = std::get_if<Growth>(&spec)) {
    m = g->m;
  } else if (const auto* pp = std::get_if<PowerPrice>(&spec)) {
    m = pp->m;
  } else {
    throw DomainError(std::string("derived_series: scenario ") + scenario_name(spec) +
                      " has no price or investment norm");
  }
  DerivedSeries out;
  out.investment.resize(traj.values.size());
  out.income.resize(traj.values.size());
  for (std::size_t j = 0; j < traj.values.size(); ++j) {
    out.income[j] = price(traj.grid.t(j)) * traj.values[j];
    out.investment[j] = m * out.income[j];
  }
  return out;
}

}  // namespace memkinetics

#endif  // MEMKINETICS_MODELS_HPP
