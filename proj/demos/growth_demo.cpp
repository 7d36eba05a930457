// Output growth with and without memory: lam = m P L = 0.1, Y(0) = 100.
// The alpha = 1 column is the classical exponential 100 exp(0.1 t).

#include <cstdio>

#include "memkinetics/memkinetics.hpp"

int main() {
  using namespace memkinetics;
  const TrajectoryGrid grid{10.0, 10};
  const double orders[] = {0.6, 0.8, 1.0};

  std::vector<Trajectory> paths;
  for (double alpha : orders) {
    const Growth g{alpha, 0.2, 10.0, 0.05, {100.0}};
    paths.push_back(analytic_growth(compile(g), grid));
  }

  std::printf("%6s %14s %14s %14s\n", "t", "alpha=0.6", "alpha=0.8", "alpha=1");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::printf("%6.1f %14.6f %14.6f %14.6f\n", grid.t(j), paths[0].values[j], paths[1].values[j],
                paths[2].values[j]);
  }

  // The numerical oracle on the same problem.
  const Growth g{0.8, 0.2, 10.0, 0.05, {100.0}};
  const auto abm = solve_abm(compile(g), TrajectoryGrid{10.0, 10000});
  std::printf("\nalpha=0.8 at t=10: closed form %.9f, ABM (h=1e-3) %.9f\n", paths[1].values.back(),
              abm.values.back());
  return 0;
}
