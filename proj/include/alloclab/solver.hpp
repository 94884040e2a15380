#pragma once

#include "alloclab/allocation.hpp"

#include <cstdint>

namespace alloclab {

struct SolverCaps {
    std::uint64_t max_assignments = 10000000;  // (n+1)^m enumeration cap
};

struct SolveResult {
    Allocation best_allocation;
    Rational best_value;
    std::uint64_t explored = 0;  // assignments enumerated, feasible or not
};

// Exhaustive scan over every assignment of each good to an agent or to
// nobody; infeasible GAP assignments are skipped, ties go to the first
// assignment found in lexicographic order (unallocated before agent 0).
// No pruning or bounding; this is the oracle the rest of the code is
// checked against.
SolveResult solve_exact(const AllocationInstance& inst, Objective obj, const SolverCaps& caps = {});

// True when every Nash-optimal allocation in the search space gives each
// agent at most one large good. Two full passes: find the optimum, then
// verify the property on every optimizer.
bool check_single_large_good_property(const AllocationInstance& inst, const SolverCaps& caps = {});

}  // namespace alloclab
