#ifndef MEMKINETICS_SOLVER_CONVERGENCE_HPP
#define MEMKINETICS_SOLVER_CONVERGENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "memkinetics/errors.hpp"
#include "memkinetics/solver/abm.hpp"
#include "memkinetics/solver/analytic.hpp"
#include "memkinetics/solver/problem.hpp"

namespace memkinetics {

struct ConvergenceStudy {
  std::vector<int> steps;
  std::vector<double> h;
  std::vector<double> max_errors;  ///< max_j |abm - analytic|
  /// Least-squares slope of log(max error) against log(h); NaN when exact.
  double order = std::numeric_limits<double>::quiet_NaN();
  /// Every error sits at rounding level, so no order can be measured.
  bool exact = false;
};

namespace detail {

inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace detail

/// ABM error against the closed form on [0, T] for each step count, and the
/// observed order. Step counts must number at least 3, each double the last.
inline ConvergenceStudy empirical_convergence_order(const CauchyProblem& prob, double T,
                                                    std::span<const int> steps,
                                                    const SeriesControl& ctl = {}) {
  if (steps.size() < 3) throw DomainError("empirical_convergence_order: need at least 3 step counts");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] < 1 || (i > 0 && steps[i] != 2 * steps[i - 1])) {
      std::ostringstream os;
      os << "empirical_convergence_order: step counts must double, got";
      for (int s : steps) os << ' ' << s;
      throw DomainError(os.str());
    }
  }

  ConvergenceStudy out;
  double scale = 1.0;
  for (int n : steps) {
    const TrajectoryGrid grid{T, n};
    const auto exact = solve_analytic(prob, grid, ctl);
    const auto numeric = solve_abm(prob, grid);
    double err = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      err = std::max(err, std::fabs(numeric.values[j] - exact.values[j]));
      scale = std::max(scale, std::fabs(exact.values[j]));
    }
    out.steps.push_back(n);
    out.h.push_back(grid.h());
    out.max_errors.push_back(err);
  }

  const double rounding = 1e-13 * scale;
  out.exact = std::all_of(out.max_errors.begin(), out.max_errors.end(),
                          [rounding](double e) { return e <= rounding; });
  if (out.exact) return out;

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < out.h.size(); ++i) {
    lx.push_back(std::log(out.h[i]));
    ly.push_back(std::log(std::max(out.max_errors[i], std::numeric_limits<double>::min())));
  }
  out.order = detail::least_squares_slope(lx, ly);
  return out;
}

}  // namespace memkinetics

#endif  // MEMKINETICS_SOLVER_CONVERGENCE_HPP
