#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alloclab/errors.hpp"
#include "alloclab/unique_games.hpp"

using namespace alloclab;

TEST_CASE("satisfaction on a single edge") {
    UgInstance inst(1, 1, 2, {UgEdge{0, 0, Permutation::identity(2)}});
    CHECK(satisfaction(inst, Labeling{{1}, {2}}) == 0);
    CHECK(satisfaction(inst, Labeling{{2}, {2}}) == 1);
}

TEST_CASE("planted instances satisfy their labeling") {
    const auto planted = planted_instance(2, 2, 2, 2, 5);
    CHECK(planted.instance.a_nodes() == 2);
    CHECK(planted.instance.edges().size() == 4);
    CHECK(planted.instance.degree_a() == 2);
    CHECK(planted.instance.degree_b() == 2);
    CHECK(satisfaction(planted.instance, planted.labeling) == 1);

    // a second seed gives different permutations but stays satisfied
    const auto other = planted_instance(2, 2, 2, 2, 6);
    CHECK(satisfaction(other.instance, other.labeling) == 1);
    bool same = other.instance.edges().size() == planted.instance.edges().size();
    if (same) {
        same = false;
        for (std::size_t e = 0; e < other.instance.edges().size(); ++e)
            if (!(other.instance.edges()[e].pi == planted.instance.edges()[e].pi) ||
                other.instance.edges()[e].a != planted.instance.edges()[e].a) {
                same = false;
                break;
            } else {
                same = true;
            }
    }
    CHECK(!same);
}

TEST_CASE("planted instance validation") {
    CHECK_THROWS_AS(planted_instance(3, 2, 2, 2, 1), InvalidParameterError);  // 4 edges over 3 a-nodes
    CHECK_THROWS_AS(planted_instance(1, 2, 2, 2, 1), InvalidParameterError);  // deg_b > |A|
    const auto bigger = planted_instance(4, 2, 4, 3, 9);
    CHECK(bigger.instance.degree_a() == 2);
    CHECK(satisfaction(bigger.instance, bigger.labeling) == 1);
}

TEST_CASE("random labelings satisfy about 1/R of the edges") {
    const int R = 4;
    double total = 0;
    std::mt19937_64 rng(2024);
    const auto planted = planted_instance(4, 4, 3, R, 77);
    for (int trial = 0; trial < 100; ++trial) {
        Labeling random_labels;
        for (int a = 0; a < 4; ++a)
            random_labels.a_labels.push_back(static_cast<int>(bounded_draw(rng, R)) + 1);
        for (int b = 0; b < 4; ++b)
            random_labels.b_labels.push_back(static_cast<int>(bounded_draw(rng, R)) + 1);
        total += as_double(satisfaction(planted.instance, random_labels));
    }
    CHECK(total / 100 > 1.0 / R - 0.1);
    CHECK(total / 100 < 1.0 / R + 0.1);
}

TEST_CASE("satisfaction is invariant under a consistent relabeling of the alphabet") {
    const auto planted = planted_instance(2, 2, 2, 3, 123);
    Labeling labels{{1, 2}, {3, 1}};
    const Rational before = satisfaction(planted.instance, labels);

    // apply sigma to every label and conjugate every permutation
    const Permutation sigma({2, 3, 1});
    std::vector<UgEdge> edges;
    for (const auto& edge : planted.instance.edges()) {
        std::vector<int> images(3);
        for (int i = 1; i <= 3; ++i)
            images[static_cast<std::size_t>(sigma.apply(i) - 1)] = sigma.apply(edge.pi.apply(i));
        edges.push_back(UgEdge{edge.a, edge.b, Permutation(images)});
    }
    UgInstance conjugated(2, 2, 3, std::move(edges));
    Labeling mapped;
    for (int l : labels.a_labels) mapped.a_labels.push_back(sigma.apply(l));
    for (int l : labels.b_labels) mapped.b_labels.push_back(sigma.apply(l));
    CHECK(satisfaction(conjugated, mapped) == before);
}

TEST_CASE("decoder recovers a planted labeling from dictators") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
        const auto planted = planted_instance(2, 2, 2, 3, seed);
        const auto fa = dictator_functions(planted.instance, planted.labeling, 2);
        const Labeling decoded = decode_labeling(planted.instance, fa, 2, Rational(1, 10), seed);
        CHECK(satisfaction(planted.instance, decoded) == 1);
    }
}

TEST_CASE("decoder tolerates degenerate functions") {
    const auto planted = planted_instance(2, 2, 2, 2, 8);
    const std::vector<FunctionTable> constant(2, FunctionTable::constant(2, 2, Rational(1, 2)));
    const Labeling decoded = decode_labeling(planted.instance, constant, 2, Rational(1, 10), 1);
    CHECK(decoded.a_labels.size() == 2);
    CHECK(decoded.b_labels.size() == 2);
    for (int l : decoded.a_labels) CHECK((l >= 1 && l <= 2));

    const auto counts = decoder_candidate_counts(planted.instance, constant, 2, Rational(1, 10));
    for (int c : counts) CHECK(c == 0);
}

TEST_CASE("candidate sets stay within 2d/tau") {
    std::mt19937_64 rng(55);
    const auto planted = planted_instance(3, 3, 2, 3, 21);
    std::vector<FunctionTable> fa;
    for (int a = 0; a < 3; ++a)
        fa.push_back(FunctionTable::random_mean_indicator(3, 2, Rational(2, 3), rng()));
    const int d = 2;
    const Rational tau(1, 10);
    for (int c : decoder_candidate_counts(planted.instance, fa, d, tau))
        CHECK(Rational(c) <= Rational(2 * d) / tau);
}

TEST_CASE("b-side averaging of dictators lands on the b label") {
    const auto planted = planted_instance(2, 2, 2, 3, 31);
    const auto fa = dictator_functions(planted.instance, planted.labeling, 2);
    for (int b = 0; b < 2; ++b) {
        const auto fb = side_b_function(planted.instance, fa, b);
        CHECK(fb == FunctionTable::dictator(3, planted.labeling.b_labels[static_cast<std::size_t>(b)], 2));
    }
}

TEST_CASE("instance and labeling JSON round-trip") {
    const auto planted = planted_instance(2, 2, 2, 3, 77);
    const auto restored = UgInstance::from_json(planted.instance.to_json());
    CHECK(restored.a_nodes() == planted.instance.a_nodes());
    CHECK(restored.edges().size() == planted.instance.edges().size());
    for (std::size_t e = 0; e < restored.edges().size(); ++e) {
        CHECK(restored.edges()[e].a == planted.instance.edges()[e].a);
        CHECK(restored.edges()[e].b == planted.instance.edges()[e].b);
        CHECK(restored.edges()[e].pi == planted.instance.edges()[e].pi);
    }
    const auto labels = Labeling::from_json(planted.labeling.to_json(), 2, 2);
    CHECK(labels.a_labels == planted.labeling.a_labels);
    CHECK(labels.b_labels == planted.labeling.b_labels);
}

TEST_CASE("biregularity is enforced") {
    // a has degree 2, but the second a-node has degree 0
    std::vector<UgEdge> edges;
    edges.push_back(UgEdge{0, 0, Permutation::identity(2)});
    edges.push_back(UgEdge{0, 1, Permutation::identity(2)});
    CHECK_THROWS_AS(UgInstance(2, 2, 2, std::move(edges)), InvalidParameterError);
}
