#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alloclab/errors.hpp"
#include "alloclab/product_distribution.hpp"
#include "alloclab/tuple_distribution.hpp"

#include <map>
#include <set>

using namespace alloclab;

TEST_CASE("eta at q=2") {
    const auto eta = TupleDistribution::eta(2);
    CHECK(eta.arity() == 4);
    CHECK(eta.alphabet() == 3);
    CHECK(eta.prob_of({0, 0, 0, 0}) == Rational(1, 9));
    CHECK(eta.prob_of({1, 1, 1, 1}) == 0);  // 1+1 != 1 mod 3
    CHECK(eta.support().size() == 9);
}

TEST_CASE("eta at q=1 enumerates (a, b, a+b) mod 2") {
    const auto eta = TupleDistribution::eta(1);
    CHECK(eta.arity() == 3);
    // independent oracle: enumerate the support directly
    std::set<std::size_t> expected;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            expected.insert(static_cast<std::size_t>(a + 2 * b + 4 * ((a + b) % 2)));
    const auto support = eta.support();
    CHECK(std::set<std::size_t>(support.begin(), support.end()) == expected);
    for (std::size_t c : support) CHECK(eta.prob(c) == Rational(1, 4));
}

TEST_CASE("eta parameter validation") {
    CHECK_THROWS_AS(TupleDistribution::eta(0), InvalidParameterError);
    CHECK_THROWS_AS(TupleDistribution::eta(3), InvalidParameterError);  // q+1=4 not prime
    CHECK_NOTHROW(TupleDistribution::eta(4));
}

TEST_CASE("noise mixes toward uniform") {
    const auto eta = TupleDistribution::eta(2);
    const Rational eps(1, 10);
    const auto noisy = eta.with_noise(eps);
    CHECK(noisy.prob_of({1, 1, 1, 1}) == Rational(1, 810));    // (1-eps)*0 + eps/81
    CHECK(noisy.prob_of({0, 0, 0, 0}) == Rational(41, 405));   // (9/10)(1/9) + (1/10)(1/81)
    Rational total(0);
    for (const auto& p : noisy.table()) total += p;
    CHECK(total == 1);
    CHECK_THROWS_AS(eta.with_noise(Rational(0)), InvalidParameterError);
    CHECK_THROWS_AS(eta.with_noise(Rational(1)), InvalidParameterError);

    // mixture is pointwise linear
    for (std::size_t c = 0; c < noisy.table_size(); ++c)
        CHECK(noisy.prob(c) == (1 - eps) * eta.prob(c) + eps * Rational(1, 81));
}

TEST_CASE("analysis of eta and its noisy variant at q=2") {
    const auto eta = TupleDistribution::eta(2);
    const auto base = eta.analyze();
    CHECK(base.balanced);
    CHECK(base.pairwise_independent);
    CHECK(base.prob_some_zero == 1);
    CHECK(base.min_probability == 0);

    const Rational eps(1, 10);
    const auto noisy = eta.with_noise(eps).analyze();
    CHECK(noisy.balanced);
    CHECK(noisy.pairwise_independent);
    CHECK(noisy.min_probability == Rational(1, 810));
    CHECK(noisy.min_probability >= eps / 81);
    CHECK(noisy.prob_some_zero == Rational(397, 405));
    CHECK(noisy.prob_some_zero == 1 - 16 * eps / 81);
}

TEST_CASE("analysis across the alphabet family") {
    for (int q : {1, 2, 4}) {
        const auto eta = TupleDistribution::eta(q);
        CHECK(eta.analyze().prob_some_zero == 1);
        for (const Rational eps : {Rational(1, 10), Rational(1, 100)}) {
            const auto report = eta.with_noise(eps).analyze();
            CHECK(report.balanced);
            CHECK(report.pairwise_independent);
            CHECK(report.min_probability >=
                  eps / Rational(BigInt(checked_pow(static_cast<std::size_t>(q + 1),
                                                    static_cast<unsigned>(q + 2)))));
            CHECK(report.prob_some_zero >= 1 - eps);
        }
    }
}

TEST_CASE("a distribution that misses a law") {
    // uniform over {(0,0), (1,1)}: balanced but not pairwise independent
    std::vector<Rational> table(4, Rational(0));
    table[0] = Rational(1, 2);
    table[3] = Rational(1, 2);
    const TupleDistribution d(2, 2, table);
    const auto report = d.analyze();
    CHECK(report.balanced);
    CHECK(!report.pairwise_independent);
}

TEST_CASE("sampling a degenerate factor is deterministic") {
    const auto factor = TupleDistribution::point_mass({0, 0, 0, 0}, 3);
    const ProductDistribution p(factor, 3);
    const auto points = sample_product(p, 42);
    REQUIRE(points.size() == 4);
    for (const auto& pt : points) {
        CHECK(pt.length() == 3);
        CHECK(pt.code() == 0);
    }
}

TEST_CASE("same seed reproduces the draw") {
    const ProductDistribution p(TupleDistribution::eta(2).with_noise(Rational(1, 10)), 2);
    const auto a = sample_product(p, 123);
    const auto b = sample_product(p, 123);
    CHECK(a == b);
    const auto c = sample_product(p, 124);
    CHECK(a != c);
}

TEST_CASE("empirical marginals track balance") {
    const ProductDistribution p(TupleDistribution::eta(2).with_noise(Rational(1, 10)), 2);
    ProductSampler sampler(p, 7);
    const int draws = 100000;
    std::map<int, int> counts;  // value of x^1_1
    for (int n = 0; n < draws; ++n) {
        const auto points = sampler.draw();
        ++counts[points[0].coord(1)];
    }
    for (int v = 0; v < 3; ++v) {
        const double freq = static_cast<double>(counts[v]) / draws;
        CHECK(freq > 1.0 / 3 - 0.02);
        CHECK(freq < 1.0 / 3 + 0.02);
    }
}

TEST_CASE("support enumeration counts and mass") {
    const auto eta = TupleDistribution::eta(2);
    {
        const ProductDistribution p(eta, 1);
        std::size_t count = 0;
        Rational mass(0);
        for_each_support(p, kDefaultSupportCap, [&](const std::vector<PointCode>&, const Rational& prob) {
            ++count;
            mass += prob;
            CHECK(prob == Rational(1, 9));
        });
        CHECK(count == 9);
        CHECK(mass == 1);
    }
    {
        const ProductDistribution p(eta.with_noise(Rational(1, 10)), 1);
        std::size_t count = 0;
        for_each_support(p, kDefaultSupportCap, [&](const std::vector<PointCode>&, const Rational&) { ++count; });
        CHECK(count == 81);
    }
    for (int R : {1, 2, 3}) {
        const ProductDistribution p(eta.with_noise(Rational(1, 10)), R);
        Rational mass(0);
        for_each_support(p, kDefaultSupportCap, [&](const std::vector<PointCode>&, const Rational& prob) { mass += prob; });
        CHECK(mass == 1);
    }
}

TEST_CASE("support cap raises a resource error") {
    const ProductDistribution p(TupleDistribution::eta(2).with_noise(Rational(1, 10)), 3);
    CHECK_THROWS_AS(for_each_support(p, 100, [](const std::vector<PointCode>&, const Rational&) {}),
                    ResourceLimitError);
}

TEST_CASE("distribution JSON lists nonzero entries only") {
    const auto eta = TupleDistribution::eta(2);
    const auto j = eta.to_json();
    CHECK(j.at("q") == 2);
    CHECK(j.at("arity") == 4);
    CHECK(j.at("entries").size() == 9);
    CHECK(j.at("entries")[0].at("prob") == "1/9");
}
