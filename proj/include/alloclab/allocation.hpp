#pragma once

#include "alloclab/rational.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace alloclab {

// One good with sparse valuations. A missing (agent, value) entry means the
// agent values the good at zero; gadget instances have at most q+2 positive
// values per small good.
struct Good {
    std::string id;
    std::vector<std::pair<int, Rational>> values;  // agent -> value, agents unique
    std::optional<Rational> size;
    bool is_large = false;
};

struct AllocationInstance {
    int n_agents = 0;
    std::vector<Good> goods;
    std::optional<std::vector<Rational>> budgets;
    std::optional<std::vector<Rational>> capacities;
    std::optional<std::vector<std::vector<int>>> groups;

    // Checks the structural invariants; throws on violation.
    void validate() const;

    Rational value_of(int agent, std::size_t good) const;

    nlohmann::json to_json() const;
    static AllocationInstance from_json(const nlohmann::json& j);
};

// assignment[g] is the agent holding good g, or nullopt for unallocated.
struct Allocation {
    std::vector<std::optional<int>> assignment;

    nlohmann::json to_json() const;
    static Allocation from_json(const nlohmann::json& j);
};

enum class Objective { nash, budgeted, usw_gap };

const char* objective_name(Objective obj);
Objective objective_from_name(const std::string& name);

// Exact welfare of an allocation:
//   nash     - the product of agent utilities, not the n-th root (the root is
//              irrational; callers compare on matching powers)
//   budgeted - sum_i min(b_i, utility_i)
//   usw_gap  - sum_i utility_i, or nullopt when some bundle exceeds capacity
std::optional<Rational> evaluate_welfare(const AllocationInstance& inst, const Allocation& alloc,
                                         Objective obj);

// Per-agent utilities of an allocation (no budget caps applied).
std::vector<Rational> agent_utilities(const AllocationInstance& inst, const Allocation& alloc);

// Membership test for the grouped-gadget instance family: agents split into
// equal-sized groups, each group owning exactly 2|group|/3 large goods valued
// 1/eps inside the group and 0 outside, and every agent's total value over
// non-large goods at most 1 + eps. `violation` names the first failed clause.
struct Family2Report {
    bool ok = false;
    std::string violation;
};

Family2Report validate_family2(const AllocationInstance& inst, const Rational& eps);

}  // namespace alloclab
