#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alloclab/correlation.hpp"
#include "alloclab/efron_stein.hpp"
#include "alloclab/errors.hpp"
#include "alloclab/function_table.hpp"

#include <random>

using namespace alloclab;

namespace {

// brute-force oracle: walks the whole support of the product distribution
// and evaluates the functions leaf by leaf, independent of the contraction
// in correlation_exact
Rational correlation_brute(const std::vector<FunctionTable>& fs, const ProductDistribution& p) {
    Rational total(0);
    for_each_support(p, kDefaultSupportCap,
                     [&](const std::vector<PointCode>& codes, const Rational& prob) {
                         Rational term = prob;
                         for (std::size_t j = 0; j < fs.size(); ++j) term *= fs[j].value(codes[j]);
                         total += term;
                     });
    return total;
}

FunctionTable random_rational_function(int R, int q, std::mt19937_64& rng) {
    const std::size_t size = checked_pow(static_cast<std::size_t>(q + 1), static_cast<unsigned>(R));
    std::vector<Rational> values(size);
    for (auto& v : values) v = Rational(BigInt(bounded_draw(rng, 9)), 8);
    return FunctionTable(R, q, std::move(values));
}

}  // namespace

TEST_CASE("dictator tables") {
    const auto f = FunctionTable::dictator(1, 1, 2);
    CHECK(f.values() == std::vector<Rational>{0, 1, 1});
    CHECK(FunctionTable::dictator(3, 2, 2).mean() == Rational(2, 3));
    CHECK_THROWS_AS(FunctionTable::dictator(3, 4, 2), DimensionError);
}

TEST_CASE("dictator influences concentrate on one coordinate") {
    const auto prof = influence_profile(FunctionTable::dictator(3, 2, 2), 1);
    CHECK(prof.inf(2) == Rational(2, 9));  // variance of a {0,1} variable with mean 2/3
    CHECK(prof.inf(1) == 0);
    CHECK(prof.inf(3) == 0);
    CHECK(prof.inf_le(2) == Rational(2, 9));
    CHECK(prof.inf_le(1) == 0);
}

TEST_CASE("decomposition of a constant") {
    const auto dec = EfronSteinDecomposition::compute(FunctionTable::constant(2, 2, Rational(1, 2)));
    CHECK(dec.component(0)[0] == Rational(1, 2));
    for (SubsetMask S = 1; S < 4; ++S)
        for (const auto& v : dec.component(S)) CHECK(v == 0);
    const auto prof = influence_profile(FunctionTable::constant(2, 2, Rational(1, 2)), 2);
    CHECK(prof.inf(1) == 0);
    CHECK(prof.inf(2) == 0);
}

TEST_CASE("decomposition of a one-coordinate function") {
    const auto dec = EfronSteinDecomposition::compute(FunctionTable::dictator(2, 1, 2));
    // only the empty set and {1} carry weight
    CHECK(dec.component_weight(0) != 0);
    CHECK(dec.component_weight(1) != 0);
    CHECK(dec.component_weight(2) == 0);
    CHECK(dec.component_weight(3) == 0);
}

TEST_CASE("reconstruction, orthogonality and Parseval on random functions") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const int R = 1 + static_cast<int>(bounded_draw(rng, 3));
        const FunctionTable f = trial % 2 == 0
                                    ? random_rational_function(R, 2, rng)
                                    : FunctionTable::random_mean_indicator(R, 2, Rational(2, 3), rng());
        const auto dec = EfronSteinDecomposition::compute(f);
        CHECK(dec.reconstruct() == f);

        const std::size_t size = f.table_size();
        const SubsetMask full = static_cast<SubsetMask>((1u << R) - 1u);
        Rational weight_sum(0), second_moment(0);
        for (SubsetMask S = 0; S <= full; ++S) {
            weight_sum += dec.component_weight(S);
            for (SubsetMask T = S + 1; T <= full; ++T) {
                Rational dot(0);
                for (std::size_t c = 0; c < size; ++c) dot += dec.component(S)[c] * dec.component(T)[c];
                CHECK(dot == 0);
            }
        }
        for (std::size_t c = 0; c < size; ++c) second_moment += f.value(c) * f.value(c);
        CHECK(weight_sum == second_moment / Rational(BigInt(size)));
    }
}

TEST_CASE("influence profiles are permutation-equivariant and monotone in d") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const int R = 3;
        const FunctionTable f = random_rational_function(R, 2, rng);
        const Permutation pi = Permutation::random(R, rng);
        const auto prof_f = influence_profile(f, R);
        const auto prof_g = influence_profile(f.compose(pi), R);
        // g(x) = f(x o pi) reads f's coordinate i from x_{pi(i)}
        for (int i = 1; i <= R; ++i) CHECK(prof_g.inf(pi.apply(i)) == prof_f.inf(i));

        const auto dec = EfronSteinDecomposition::compute(f);
        for (int i = 1; i <= R; ++i) {
            Rational prev(0);
            for (int d = 1; d <= R; ++d) {
                const auto prof = influence_profile(dec, d);
                CHECK(prof.inf_le(i) >= prev);
                prev = prof.inf_le(i);
            }
            CHECK(influence_profile(dec, R).inf_le(i) == prof_f.inf(i));
        }
    }
}

TEST_CASE("count of influential coordinates obeys d/tau") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const FunctionTable f = FunctionTable::random_mean_indicator(4, 2, Rational(2, 3), rng());
        const auto prof = influence_profile(f, 2);
        CHECK(Rational(prof.count_at_least(Rational(1, 8))) <= Rational(2) / Rational(1, 8));
    }
}

TEST_CASE("decomposition cap") {
    EfronSteinOptions opts;
    opts.max_coordinates = 2;
    CHECK_THROWS_AS(EfronSteinDecomposition::compute(FunctionTable::dictator(3, 1, 2), opts),
                    ResourceLimitError);
}

TEST_CASE("correlation of dictators under the aligned distribution is zero") {
    const ProductDistribution p(TupleDistribution::eta(2), 2);
    for (int i = 1; i <= 2; ++i) {
        const std::vector<FunctionTable> fs(4, FunctionTable::dictator(2, i, 2));
        CHECK(correlation_exact(fs, p) == 0);
    }
}

TEST_CASE("correlation of constants is the product of means") {
    const ProductDistribution p(TupleDistribution::eta(2).with_noise(Rational(1, 10)), 2);
    const std::vector<FunctionTable> fs(4, FunctionTable::constant(2, 2, Rational(2, 3)));
    CHECK(correlation_exact(fs, p) == Rational(16, 81));
}

TEST_CASE("correlation of the {0,1} indicator at R=1") {
    const ProductDistribution p(TupleDistribution::eta(2), 1);
    const std::vector<FunctionTable> fs(4, FunctionTable::indicator(1, 2, {0, 1}));
    // support tuples fully inside {0,1}: (0,0,0,0) and (1,0,1,1)
    CHECK(correlation_exact(fs, p) == Rational(2, 9));
}

TEST_CASE("contracted and brute-force correlations agree") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const int R = 1 + static_cast<int>(bounded_draw(rng, 2));
        const int q = trial % 3 == 0 ? 1 : 2;
        const auto base = TupleDistribution::eta(q);
        const ProductDistribution p(trial % 2 == 0 ? base.with_noise(Rational(1, 7)) : base, R);
        std::vector<FunctionTable> fs;
        for (int j = 0; j < p.arity(); ++j) fs.push_back(random_rational_function(R, q, rng));
        CHECK(correlation_exact(fs, p) == correlation_brute(fs, p));
    }
}

TEST_CASE("decomposition works across alphabets") {
    std::mt19937_64 rng(47);
    for (const auto& [R, q] : std::vector<std::pair<int, int>>{{3, 1}, {1, 4}, {2, 4}}) {
        const FunctionTable f = random_rational_function(R, q, rng);
        const auto dec = EfronSteinDecomposition::compute(f);
        CHECK(dec.reconstruct() == f);
    }
    // a q=1 dictator has variance 1/4
    CHECK(influence_profile(FunctionTable::dictator(2, 1, 1), 1).inf(1) == Rational(1, 4));
}

TEST_CASE("six-wise correlation at q=4 matches brute force") {
    std::mt19937_64 rng(53);
    const Rational eps(1, 9);
    const ProductDistribution p(TupleDistribution::eta(4).with_noise(eps), 1);
    std::vector<FunctionTable> fs;
    for (int j = 0; j < 6; ++j) fs.push_back(random_rational_function(1, 4, rng));
    CHECK(correlation_exact(fs, p) == correlation_brute(fs, p));
    // six dictators under the aligned distribution score only the noise mass
    const std::vector<FunctionTable> dict(6, FunctionTable::dictator(1, 1, 4));
    CHECK(correlation_exact(dict, p) == eps * Rational(4096, 15625));
}

TEST_CASE("correlation handles small arities") {
    std::mt19937_64 rng(37);
    // arity 2: uniform over matching pairs
    std::vector<Rational> pair_table(4, Rational(0));
    pair_table[0] = Rational(1, 2);
    pair_table[3] = Rational(1, 2);
    const ProductDistribution pairs(TupleDistribution(2, 2, pair_table), 2);
    for (int trial = 0; trial < 5; ++trial) {
        const std::vector<FunctionTable> fs{random_rational_function(2, 1, rng),
                                            random_rational_function(2, 1, rng)};
        CHECK(correlation_exact(fs, pairs) == correlation_brute(fs, pairs));
    }
    // arity 1 degenerates to a plain expectation
    const ProductDistribution single(TupleDistribution::uniform(1, 3), 2);
    const std::vector<FunctionTable> one{FunctionTable::dictator(2, 1, 2)};
    CHECK(correlation_exact(one, single) == Rational(2, 3));
}

TEST_CASE("correlation cap and Monte Carlo mode") {
    const ProductDistribution p(TupleDistribution::eta(2).with_noise(Rational(1, 10)), 5);
    const std::vector<FunctionTable> fs(4, FunctionTable::dictator(5, 1, 2));
    CHECK_THROWS_AS(correlation_exact(fs, p), ResourceLimitError);

    const ProductDistribution small(TupleDistribution::eta(2).with_noise(Rational(1, 10)), 2);
    const std::vector<FunctionTable> gs(4, FunctionTable::dictator(2, 1, 2));
    const auto mc = correlation_monte_carlo(gs, small, 20000, 99);
    CHECK(mc.samples == 20000);
    CHECK(mc.seed == 99);
    const Rational exact = correlation_exact(gs, small);
    CHECK(abs(as_double(mc.estimate) - as_double(exact)) < 0.01);
    // reruns with the same seed agree
    CHECK(correlation_monte_carlo(gs, small, 20000, 99).estimate == mc.estimate);
}

TEST_CASE("random mean indicators hit their count exactly") {
    CHECK(FunctionTable::random_mean_indicator(1, 2, Rational(2, 3), 1).mean() == Rational(2, 3));
    {
        const auto f = FunctionTable::random_mean_indicator(2, 2, Rational(2, 3), 9);
        std::size_t ones = 0;
        for (const auto& v : f.values()) ones += (v == 1);
        CHECK(ones == 6);
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        CHECK(FunctionTable::random_mean_indicator(3, 2, Rational(2, 3), seed).mean() == Rational(2, 3));
    CHECK_THROWS_AS(FunctionTable::random_mean_indicator(1, 2, Rational(1, 2), 1),
                    InvalidParameterError);
}

TEST_CASE("function JSON round-trip") {
    const auto f = FunctionTable::random_mean_indicator(2, 2, Rational(2, 3), 3);
    CHECK(FunctionTable::from_json(f.to_json()) == f);
}
