#ifndef MEMKINETICS_MEMKINETICS_HPP
#define MEMKINETICS_MEMKINETICS_HPP

#include "memkinetics/caputo.hpp"
#include "memkinetics/errors.hpp"
#include "memkinetics/models.hpp"
#include "memkinetics/solver.hpp"
#include "memkinetics/specialfn.hpp"

#endif  // MEMKINETICS_MEMKINETICS_HPP
