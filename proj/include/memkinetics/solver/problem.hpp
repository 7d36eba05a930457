#ifndef MEMKINETICS_SOLVER_PROBLEM_HPP
#define MEMKINETICS_SOLVER_PROBLEM_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "memkinetics/caputo.hpp"
#include "memkinetics/errors.hpp"

namespace memkinetics {

/// Linear Caputo initial-value problem
///
///   D^alpha Y = forcing_const + lam * t^price_exponent * Y + mu * D^beta Y,
///   Y^(k)(0) = initial_values[k], k = 0..n-1,
///
/// where the mu term exists only with a secondary order beta. The fixed-assets
/// equation D^alpha K = A - B K is forcing_const = A, decay_coeff = B, lam = -B.
struct CauchyProblem {
  FractionalOrder ord{1.0};
  std::optional<FractionalOrder> secondary_ord;
  double mu = 0.0;
  double lam = 0.0;
  double price_exponent = 0.0;
  double forcing_const = 0.0;
  double decay_coeff = 0.0;
  std::vector<double> initial_values{0.0};

  void validate() const {
    std::ostringstream os;
    if (initial_values.size() != static_cast<std::size_t>(ord.n())) {
      os << "CauchyProblem: order " << ord.alpha() << " needs " << ord.n()
         << " initial values, got " << initial_values.size() << "; ";
    }
    for (double v : initial_values) {
      if (!std::isfinite(v)) {
        os << "CauchyProblem: initial values must be finite; ";
        break;
      }
    }
    if (!std::isfinite(mu) || !std::isfinite(lam) || !std::isfinite(price_exponent) ||
        !std::isfinite(forcing_const) || !std::isfinite(decay_coeff)) {
      os << "CauchyProblem: coefficients must be finite; ";
    }
    if (secondary_ord && !(secondary_ord->alpha() < ord.alpha())) {
      os << "CauchyProblem: need alpha > beta > 0 for the two-term equation; ";
    }
    if (!secondary_ord && mu != 0.0) os << "CauchyProblem: mu given without a secondary order; ";
    if (price_exponent < 0.0) os << "CauchyProblem: price_exponent must be >= 0; ";
    if (decay_coeff < 0.0) os << "CauchyProblem: decay_coeff must be >= 0; ";
    if (decay_coeff > 0.0 && lam != -decay_coeff) {
      os << "CauchyProblem: lam must equal -decay_coeff when a decay term is present; ";
    }
    std::string msg = os.str();
    if (!msg.empty()) {
      msg.resize(msg.size() - 2);
      throw DomainError(msg);
    }
  }

  friend bool operator==(const CauchyProblem&, const CauchyProblem&) = default;
};

/// Uniform grid t_j = j T / N, j = 0..N.
struct TrajectoryGrid {
  double T = 1.0;
  int N = 100;

  double h() const { return T / N; }
  double t(std::size_t j) const { return T * static_cast<double>(j) / N; }
  std::size_t size() const { return static_cast<std::size_t>(N) + 1; }

  void validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("TrajectoryGrid: T must be finite and > 0");
    if (N < 1) throw DomainError("TrajectoryGrid: N must be >= 1");
  }

  friend bool operator==(const TrajectoryGrid&, const TrajectoryGrid&) = default;
};

enum class Method { analytic, abm };

inline const char* to_string(Method m) { return m == Method::analytic ? "analytic" : "abm"; }

struct Trajectory {
  TrajectoryGrid grid;
  std::vector<double> values;
  Method method = Method::analytic;
};

namespace detail {

inline void require_finite(const Trajectory& traj, const char* what) {
  for (std::size_t j = 0; j < traj.values.size(); ++j) {
    if (!std::isfinite(traj.values[j])) {
      std::ostringstream os;
      os << what << ": non-finite value at t = " << traj.grid.t(j);
      throw OverflowError(os.str());
    }
  }
}

}  // namespace detail
}  // namespace memkinetics

#endif  // MEMKINETICS_SOLVER_PROBLEM_HPP
