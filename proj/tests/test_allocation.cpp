#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alloclab/allocation.hpp"
#include "alloclab/dictator_gadget.hpp"
#include "alloclab/errors.hpp"

#include <random>

using namespace alloclab;

namespace {

AllocationInstance two_agent_instance() {
    AllocationInstance inst;
    inst.n_agents = 2;
    inst.goods.push_back(Good{"g1", {{0, Rational(1)}}, std::nullopt, false});
    inst.goods.push_back(Good{"g2", {{1, Rational(1)}}, std::nullopt, false});
    return inst;
}

}  // namespace

TEST_CASE("welfare of the identity split") {
    const auto inst = two_agent_instance();
    const Allocation alloc{{0, 1}};
    CHECK(*evaluate_welfare(inst, alloc, Objective::nash) == 1);

    AllocationInstance gap = inst;
    gap.goods[0].size = Rational(1);
    gap.goods[1].size = Rational(1);
    gap.capacities = std::vector<Rational>{Rational(1), Rational(1)};
    CHECK(*evaluate_welfare(gap, alloc, Objective::usw_gap) == 2);
}

TEST_CASE("capacity violations are infeasible") {
    AllocationInstance inst;
    inst.n_agents = 1;
    inst.goods.push_back(Good{"g1", {{0, Rational(1)}}, Rational(1), false});
    inst.goods.push_back(Good{"g2", {{0, Rational(1)}}, Rational(1), false});
    inst.capacities = std::vector<Rational>{Rational(1)};
    CHECK(!evaluate_welfare(inst, Allocation{{0, 0}}, Objective::usw_gap));
    CHECK(*evaluate_welfare(inst, Allocation{{0, std::nullopt}}, Objective::usw_gap) == 1);
}

TEST_CASE("budgeted welfare caps each agent") {
    AllocationInstance inst;
    inst.n_agents = 1;
    inst.goods.push_back(Good{"g1", {{0, Rational(3, 4)}}, std::nullopt, false});
    inst.goods.push_back(Good{"g2", {{0, Rational(3, 4)}}, std::nullopt, false});
    inst.budgets = std::vector<Rational>{Rational(1)};
    CHECK(*evaluate_welfare(inst, Allocation{{0, 0}}, Objective::budgeted) == 1);
    CHECK(*evaluate_welfare(inst, Allocation{{0, std::nullopt}}, Objective::budgeted) == Rational(3, 4));
    CHECK_THROWS_AS(evaluate_welfare(two_agent_instance(), Allocation{{0, 1}}, Objective::budgeted),
                    InvalidParameterError);
}

TEST_CASE("zero agents zero the Nash product") {
    const auto inst = two_agent_instance();
    CHECK(*evaluate_welfare(inst, Allocation{{0, std::nullopt}}, Objective::nash) == 0);
}

TEST_CASE("welfare is invariant under relabeling") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        AllocationInstance inst;
        inst.n_agents = 3;
        const std::size_t m = 1 + bounded_draw(rng, 5);
        for (std::size_t g = 0; g < m; ++g) {
            Good good;
            good.id = "g" + std::to_string(g);
            for (int a = 0; a < 3; ++a)
                if (bounded_draw(rng, 2)) good.values.emplace_back(a, Rational(BigInt(bounded_draw(rng, 5)), 4));
            inst.goods.push_back(std::move(good));
        }
        inst.budgets = std::vector<Rational>{Rational(1), Rational(1, 2), Rational(2)};
        Allocation alloc;
        for (std::size_t g = 0; g < m; ++g) {
            const auto pick = bounded_draw(rng, 4);
            alloc.assignment.push_back(pick == 3 ? std::optional<int>{} : std::optional<int>{static_cast<int>(pick)});
        }
        // swap agents 0 and 2 everywhere
        AllocationInstance swapped = inst;
        auto swap_agent = [](int a) { return a == 0 ? 2 : a == 2 ? 0 : a; };
        for (auto& good : swapped.goods)
            for (auto& [agent, value] : good.values) agent = swap_agent(agent);
        std::swap((*swapped.budgets)[0], (*swapped.budgets)[2]);
        Allocation swapped_alloc = alloc;
        for (auto& holder : swapped_alloc.assignment)
            if (holder) holder = swap_agent(*holder);

        for (Objective obj : {Objective::nash, Objective::budgeted})
            CHECK(evaluate_welfare(inst, alloc, obj) == evaluate_welfare(swapped, swapped_alloc, obj));

        // appending a universally zero-valued good changes nothing
        AllocationInstance padded = inst;
        padded.goods.push_back(Good{"zero", {}, std::nullopt, false});
        Allocation padded_alloc = alloc;
        padded_alloc.assignment.push_back(1);
        for (Objective obj : {Objective::nash, Objective::budgeted})
            CHECK(evaluate_welfare(inst, alloc, obj) == evaluate_welfare(padded, padded_alloc, obj));
    }
}

TEST_CASE("budgeted welfare never exceeds the budget total") {
    AllocationInstance inst = two_agent_instance();
    inst.budgets = std::vector<Rational>{Rational(1, 2), Rational(1, 3)};
    const Rational total = Rational(1, 2) + Rational(1, 3);
    const auto w = *evaluate_welfare(inst, Allocation{{0, 1}}, Objective::budgeted);
    CHECK(w <= total);
    CHECK(w == total);  // both utilities weakly exceed their budget
}

TEST_CASE("family membership of the explicit gadget") {
    const auto inst = materialize(build_dictator_test(1, 2, Rational(1, 10)));
    const auto report = validate_family2(inst, Rational(1, 10));
    CHECK(report.ok);

    // revalue one large good: the validator names the clause
    AllocationInstance broken = inst;
    for (auto& good : broken.goods)
        if (good.is_large) {
            for (auto& [agent, value] : good.values) value = Rational(20);
            break;
        }
    const auto broken_report = validate_family2(broken, Rational(1, 10));
    CHECK(!broken_report.ok);
    CHECK(broken_report.violation == "large good value");

    AllocationInstance ungrouped = inst;
    ungrouped.groups.reset();
    CHECK(validate_family2(ungrouped, Rational(1, 10)).violation == "groups missing");
}

TEST_CASE("instance JSON round-trip") {
    auto inst = two_agent_instance();
    inst.goods[0].size = Rational(1, 3);
    inst.goods[0].is_large = true;
    inst.capacities = std::vector<Rational>{Rational(1), Rational(1)};
    inst.budgets = std::vector<Rational>{Rational(1, 2), Rational(5)};
    inst.groups = std::vector<std::vector<int>>{{0, 1}};
    const auto restored = AllocationInstance::from_json(inst.to_json());
    CHECK(restored.n_agents == inst.n_agents);
    CHECK(restored.goods.size() == inst.goods.size());
    CHECK(restored.goods[0].size == inst.goods[0].size);
    CHECK(restored.goods[0].is_large);
    CHECK(restored.budgets == inst.budgets);
    CHECK(restored.groups == inst.groups);

    const Allocation alloc{{0, std::nullopt}};
    const auto restored_alloc = Allocation::from_json(alloc.to_json());
    CHECK(restored_alloc.assignment == alloc.assignment);
}

TEST_CASE("instance validation rejects malformed input") {
    AllocationInstance inst;
    inst.n_agents = 1;
    inst.goods.push_back(Good{"g", {{2, Rational(1)}}, std::nullopt, false});
    CHECK_THROWS_AS(inst.validate(), InvalidParameterError);

    AllocationInstance sized;
    sized.n_agents = 1;
    sized.goods.push_back(Good{"g", {{0, Rational(1)}}, Rational(1), false});
    CHECK_THROWS_AS(sized.validate(), InvalidParameterError);  // sizes need capacities
}
