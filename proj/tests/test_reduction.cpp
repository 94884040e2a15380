#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alloclab/constants.hpp"
#include "alloclab/dictator_gadget.hpp"
#include "alloclab/errors.hpp"
#include "alloclab/reduction.hpp"

#include <random>

using namespace alloclab;

namespace {

// complete bipartite 2x2 with identity constraints, fully satisfied by
// the all-ones labeling
UgInstance identity_ug(int labels) {
    std::vector<UgEdge> edges;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) edges.push_back(UgEdge{a, b, Permutation::identity(labels)});
    return UgInstance(2, 2, labels, std::move(edges));
}

}  // namespace

TEST_CASE("meta instance shapes at R=1") {
    const auto planted = planted_instance(2, 2, 2, 1, 3);
    const MetaInstance meta = build_meta_instance(planted.instance, Rational(1, 10), 2, Rational(1, 10));
    CHECK(meta.agent_count() == 6);
    CHECK(meta.large_per_group() == 2);
    CHECK(meta.delta() == Rational(1, 16000));
    CHECK(meta.dummy_good_count() == 0);  // floor(delta * 2) = 0
    CHECK(meta.dummy_total_value() == 0);
    CHECK(meta.dummy_total_value() <= meta.delta());
    CHECK(meta.delta() <= meta.eps());
    CHECK(meta.positive_small_good_count() == 2 * 16 * 81);
}

TEST_CASE("meta instances pass the family validator") {
    for (int R : {1, 2}) {
        const auto planted = planted_instance(2, 2, 2, R, 11);
        const MetaInstance meta =
            build_meta_instance(planted.instance, Rational(1, 10), 2, Rational(1, 10));
        const auto explicit_form = materialize_meta(meta);
        const auto report = validate_family2(explicit_form, Rational(1, 10));
        CHECK(report.ok);
    }
}

TEST_CASE("a reduction with dummy goods still passes the family validator") {
    // delta*|A| = 1 needs a large eps*tau^2*|A|: use d=1, tau=1, eps=1/2, |A|=16
    const auto planted = planted_instance(16, 16, 1, 1, 4);
    const MetaInstance meta = build_meta_instance(planted.instance, Rational(1, 2), 1, Rational(1));
    CHECK(meta.dummy_good_count() == 1);
    const auto explicit_form = materialize_meta(meta);
    CHECK(validate_family2(explicit_form, Rational(1, 2)).ok);
    CHECK(meta.dummy_total_value() <= meta.delta());
}

TEST_CASE("yes-case allocation on a planted instance") {
    for (int R : {1, 2}) {
        const auto planted = planted_instance(2, 2, 2, R, 7);
        const Rational eps(1, 10);
        const MetaInstance meta = build_meta_instance(planted.instance, eps, 2, Rational(1, 10));
        std::vector<int> a_prime{0, 1};
        const auto result = yes_allocation(meta, planted.labeling, a_prime);
        CHECK(result.dummies_used == 0);

        const Rational floor =
            (1 - eps) / Rational(BigInt(2) * BigInt(checked_pow(3, static_cast<unsigned>(R - 1))));
        CHECK(result.min_non_large_utility() >= floor);

        Rational small_total(0);
        std::size_t large_agents = 0;
        for (std::size_t i = 0; i < result.utility.size(); ++i) {
            small_total += result.utility[i];
            if (result.has_large[i]) ++large_agents;
        }
        CHECK(large_agents == 2 * meta.large_per_group());
        small_total -= Rational(BigInt(large_agents)) * meta.large_value();
        CHECK(small_total == 1);
    }
}

TEST_CASE("yes-case floor also holds on three-group instances") {
    const Rational eps(1, 10);
    for (int R : {1, 2}) {
        const auto planted = planted_instance(3, 3, 2, R, 37);
        const MetaInstance meta = build_meta_instance(planted.instance, eps, 2, Rational(1, 10));
        const auto result = yes_allocation(meta, planted.labeling, {0, 1, 2});
        const Rational floor =
            (1 - eps) / Rational(BigInt(3) * BigInt(checked_pow(3, static_cast<unsigned>(R - 1))));
        CHECK(result.min_non_large_utility() >= floor);
    }
}

TEST_CASE("yes-case rejects labelings that miss edges") {
    const auto planted = planted_instance(2, 2, 2, 2, 19);
    const MetaInstance meta = build_meta_instance(planted.instance, Rational(1, 10), 2, Rational(1, 10));
    Labeling broken = planted.labeling;
    broken.b_labels[0] = broken.b_labels[0] == 1 ? 2 : 1;
    CHECK_THROWS_AS(yes_allocation(meta, broken, {0, 1}), InvalidParameterError);
    // dropping a group without dummy supply fails too
    CHECK_THROWS_AS(yes_allocation(meta, planted.labeling, {0}), InvalidParameterError);
}

TEST_CASE("no-case bound with dictators keeps the correlation term small") {
    // every composed function is the dictator at label(b), so the
    // correlation term is exactly the noise-only mass eps * 16/81;
    // at R=2 this only holds when the edge permutations are applied in the
    // right direction
    const Rational eps(1, 10);
    for (int R : {1, 2}) {
        const auto planted = planted_instance(2, 2, 2, R, 13);
        const MetaInstance meta = build_meta_instance(planted.instance, eps, 2, Rational(1, 10));
        const auto fa = dictator_functions(planted.instance, planted.labeling, 2);
        const Rational bound = no_case_bound(meta, fa);
        CHECK(bound == meta.dummy_total_value() + 1 - eps * Rational(16, 81));
    }
}

TEST_CASE("budgeted welfare of the yes-case allocation meets every budget") {
    const auto planted = planted_instance(2, 2, 2, 1, 29);
    const Rational eps(1, 10);
    const MetaInstance meta = build_meta_instance(planted.instance, eps, 2, Rational(1, 10));
    const auto result = yes_allocation(meta, planted.labeling, {0, 1});
    const Rational budget = 3 * (1 - eps) / Rational(BigInt(meta.agent_count()));
    Rational welfare(0);
    for (const auto& u : result.utility) welfare += std::min(budget, u);
    CHECK(welfare == 3 * (1 - eps));  // every agent meets its budget exactly or better
}

TEST_CASE("no-case bound enforces the mean requirement") {
    const auto planted = planted_instance(2, 2, 2, 1, 13);
    const MetaInstance meta = build_meta_instance(planted.instance, Rational(1, 10), 2, Rational(1, 10));
    const std::vector<FunctionTable> wrong(2, FunctionTable::constant(1, 2, Rational(1, 2)));
    CHECK_THROWS_AS(no_case_bound(meta, wrong), InvalidParameterError);
}

TEST_CASE("b-side means equal a-side means on random families") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int R = 1 + static_cast<int>(bounded_draw(rng, 2));
        const auto planted = planted_instance(2, 2, 2, R, 100 + trial);
        std::vector<FunctionTable> fa;
        for (int a = 0; a < 2; ++a)
            fa.push_back(FunctionTable::random_mean_indicator(R, 2, Rational(2, 3), rng()));
        Rational mean_a(0), mean_b(0);
        for (const auto& f : fa) mean_a += f.mean();
        for (int b = 0; b < 2; ++b) mean_b += side_b_function(planted.instance, fa, b).mean();
        CHECK(mean_a / 2 == mean_b / 2);
    }
}

TEST_CASE("identity permutations collapse the reduction to the gadget") {
    std::mt19937_64 rng(43);
    const Rational eps(1, 10);
    for (int R : {1, 2}) {
        const UgInstance ug = identity_ug(R);
        const MetaInstance meta = build_meta_instance(ug, eps, 2, Rational(1, 10));
        const auto gadget = build_dictator_test(R, 2, eps);
        for (int trial = 0; trial < 5; ++trial) {
            const FunctionTable f = FunctionTable::random_mean_indicator(R, 2, Rational(2, 3), rng());
            const std::vector<FunctionTable> fa(2, f);
            CHECK(no_case_bound(meta, fa) ==
                  soundness_value(gadget, f) + meta.dummy_total_value());
        }
    }
}

TEST_CASE("no-case caps") {
    const auto planted = planted_instance(2, 2, 2, 1, 13);
    const MetaInstance meta = build_meta_instance(planted.instance, Rational(1, 10), 2, Rational(1, 10));
    const auto fa = dictator_functions(planted.instance, planted.labeling, 2);
    NoCaseCaps caps;
    caps.max_outer = 4;
    CHECK_THROWS_AS(no_case_bound(meta, fa, caps), ResourceLimitError);
}

TEST_CASE("gap instance constants") {
    const auto planted = planted_instance(2, 2, 2, 1, 17);
    const Rational eps(1, 100);
    const GapInstance gap =
        build_gap_instance(planted.instance, eps, 2, Rational(1, 10), constants::gap_c());
    CHECK(gap_yes_usw(gap) == Rational(145, 81) - eps);
    CHECK(gap.large_value() == constants::gap_c() / 6);
    CHECK(gap.capacity() == 1);
    // every bundle of non-large goods fits: m goods of size 1/(2m)
    CHECK(gap.small_size() * Rational(BigInt(gap.total_good_count())) == Rational(1, 2));

    const auto grid = gap_poly_grid_min(constants::gap_c(), 1000);
    CHECK(grid.value == Rational(-48, 81));
    CHECK(grid.argmin == Rational(2, 3));
    CHECK(gap_stationary_point_check());
    CHECK(gap_no_side_check(eps));
}

TEST_CASE("gap materialization keeps bundles feasible") {
    const auto planted = planted_instance(2, 2, 1, 1, 23);
    const GapInstance gap = build_gap_instance(planted.instance, Rational(1, 100), 2,
                                               Rational(1, 10), constants::gap_c());
    const auto inst = materialize_gap(gap);
    REQUIRE(inst.capacities);
    Rational non_large_size(0);
    for (const auto& good : inst.goods) {
        REQUIRE(good.size);
        if (good.is_large)
            CHECK(*good.size == 1);
        else
            non_large_size += *good.size;
    }
    CHECK(non_large_size < 1);
}

TEST_CASE("ratio bounds at the table limit") {
    const auto report = ratio_bounds(Rational(1, 1000000));
    REQUIRE(report.bounds.size() == 3);
    CHECK(report.bounds[0].objective == "nash");
    CHECK(std::abs(report.bounds[0].decimal - 1.0761) < 1e-3);
    CHECK(report.bounds[1].objective == "budgeted");
    CHECK(std::abs(report.bounds[1].decimal - 1.0705) < 1e-3);
    CHECK(report.bounds[2].objective == "gap");
    CHECK(std::abs(report.bounds[2].decimal - 1.1240) < 1e-3);
    for (const auto& bound : report.bounds) CHECK(bound.chain_holds);
}

TEST_CASE("ratio chains hold exactly at eps = 1/100") {
    const Rational eps(1, 100);
    const auto report = ratio_bounds(eps);
    for (const auto& bound : report.bounds) CHECK(bound.chain_holds);

    // the budget chain spelled out
    const Rational lhs = 3 * (1 - eps) / (Rational(227, 81) + eps);
    CHECK(lhs >= Rational(243, 227) * (1 - eps) * (1 - eps));

    // the cubed nash chain exceeds its closed form
    const Rational cubed = report.bounds[0].ratio_bound;
    CHECK(cubed >= Rational(81, 65) * rational_pow(1 - 20 * eps, 3));

    CHECK_THROWS_AS(ratio_bounds(Rational(1, 2)), InvalidParameterError);
}
