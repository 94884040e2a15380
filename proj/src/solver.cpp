#include "alloclab/solver.hpp"

#include "alloclab/errors.hpp"

#include <string>

namespace alloclab {

namespace {

std::uint64_t assignment_space(const AllocationInstance& inst, const SolverCaps& caps) {
    std::uint64_t space = 1;
    const std::uint64_t base = static_cast<std::uint64_t>(inst.n_agents) + 1;
    for (std::size_t g = 0; g < inst.goods.size(); ++g) {
        if (space > caps.max_assignments / base + 1)
            throw ResourceLimitError("assignment space exceeds the solver cap");
        space *= base;
    }
    if (space > caps.max_assignments)
        throw ResourceLimitError("assignment space " + std::to_string(space) +
                                 " exceeds the solver cap " + std::to_string(caps.max_assignments));
    return space;
}

// digits[g]: 0 = unallocated, v >= 1 = agent v-1. Earlier goods are more
// significant, so the odometer visits assignments in lexicographic order.
bool advance(std::vector<int>& digits, int base) {
    for (std::size_t g = digits.size(); g-- > 0;) {
        if (++digits[g] < base) return true;
        digits[g] = 0;
    }
    return false;
}

Allocation to_allocation(const std::vector<int>& digits) {
    Allocation alloc;
    alloc.assignment.reserve(digits.size());
    for (int d : digits) {
        if (d == 0)
            alloc.assignment.push_back(std::nullopt);
        else
            alloc.assignment.push_back(d - 1);
    }
    return alloc;
}

template <typename Visit>
void enumerate_assignments(const AllocationInstance& inst, const SolverCaps& caps, Visit&& visit) {
    inst.validate();
    assignment_space(inst, caps);
    std::vector<int> digits(inst.goods.size(), 0);
    const int base = inst.n_agents + 1;
    if (inst.goods.empty()) {
        visit(digits);
        return;
    }
    do {
        visit(digits);
    } while (advance(digits, base));
}

}  // namespace

SolveResult solve_exact(const AllocationInstance& inst, Objective obj, const SolverCaps& caps) {
    SolveResult result;
    bool found = false;
    enumerate_assignments(inst, caps, [&](const std::vector<int>& digits) {
        ++result.explored;
        const Allocation alloc = to_allocation(digits);
        const auto value = evaluate_welfare(inst, alloc, obj);
        if (!value) return;  // infeasible
        if (!found || *value > result.best_value) {
            found = true;
            result.best_value = *value;
            result.best_allocation = alloc;
        }
    });
    if (!found) throw InvalidParameterError("no feasible assignment exists");
    return result;
}

bool check_single_large_good_property(const AllocationInstance& inst, const SolverCaps& caps) {
    const SolveResult best = solve_exact(inst, Objective::nash, caps);
    bool ok = true;
    enumerate_assignments(inst, caps, [&](const std::vector<int>& digits) {
        if (!ok) return;
        const Allocation alloc = to_allocation(digits);
        const auto value = evaluate_welfare(inst, alloc, Objective::nash);
        if (!value || *value != best.best_value) return;
        std::vector<int> large_count(static_cast<std::size_t>(inst.n_agents), 0);
        for (std::size_t g = 0; g < alloc.assignment.size(); ++g) {
            if (!inst.goods[g].is_large) continue;
            const auto& holder = alloc.assignment[g];
            if (holder && ++large_count[static_cast<std::size_t>(*holder)] > 1) {
                ok = false;
                return;
            }
        }
    });
    return ok;
}

}  // namespace alloclab
