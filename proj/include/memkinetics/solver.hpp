#ifndef MEMKINETICS_SOLVER_HPP
#define MEMKINETICS_SOLVER_HPP

#include "memkinetics/solver/abm.hpp"
#include "memkinetics/solver/analytic.hpp"
#include "memkinetics/solver/convergence.hpp"
#include "memkinetics/solver/problem.hpp"

#endif  // MEMKINETICS_SOLVER_HPP
