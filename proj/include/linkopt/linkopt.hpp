#pragma once

// Umbrella header: pulls in the whole library.

#include "linkopt/types.hpp"
#include "linkopt/graph.hpp"
#include "linkopt/solver.hpp"
#include "linkopt/pagerank.hpp"
#include "linkopt/mutation.hpp"
#include "linkopt/structure.hpp"
#include "linkopt/brute_force.hpp"
#include "linkopt/simulate.hpp"
#include "linkopt/dot.hpp"
