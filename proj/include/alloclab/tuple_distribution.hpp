#pragma once

#include "alloclab/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace alloclab {

// Exact results of analyzing a tuple distribution: the two marginal laws,
// the table minimum, and the mass of tuples containing a zero entry.
struct DistributionReport {
    bool balanced = false;
    bool pairwise_independent = false;
    Rational min_probability;
    Rational prob_some_zero;
};

// A probability table over {0,...,q}^k, indexed by tuple code (slot 1 is the
// least significant digit). All entries are exact rationals summing to 1.
class TupleDistribution {
public:
    TupleDistribution(int arity, int alphabet, std::vector<Rational> table);

    // The uniform distribution over tuples (a, b, a+b, a+2b, ..., a+qb)
    // mod (q+1), for a, b in {0,...,q}. Requires q >= 1 and q+1 prime.
    // Arity is q+2 and each of the (q+1)^2 support tuples has mass 1/(q+1)^2.
    static TupleDistribution eta(int q);

    static TupleDistribution uniform(int arity, int alphabet);
    static TupleDistribution point_mass(const std::vector<int>& tuple, int alphabet);

    // Mixture (1-eps)*this + eps*uniform, same arity and alphabet.
    // Requires 0 < eps < 1.
    TupleDistribution with_noise(const Rational& eps) const;

    int arity() const { return arity_; }
    int alphabet() const { return alphabet_; }
    std::size_t table_size() const { return table_.size(); }
    const Rational& prob(std::size_t tuple_code) const { return table_.at(tuple_code); }
    Rational prob_of(const std::vector<int>& tuple) const;
    const std::vector<Rational>& table() const { return table_; }

    // Codes with positive mass, ascending.
    std::vector<std::size_t> support() const;

    DistributionReport analyze() const;

    // The table scaled to integers over a common denominator:
    // weight[c] / den == prob(c). Heavy enumeration paths run on these.
    struct IntegerWeights {
        BigInt den;
        std::vector<BigInt> weight;
    };
    IntegerWeights integer_weights() const;

    // {q, arity, entries: [{tuple, prob}]}, nonzero entries only.
    nlohmann::json to_json() const;

    std::vector<int> decode(std::size_t tuple_code) const;

private:
    int arity_;
    int alphabet_;
    std::vector<Rational> table_;
};

}  // namespace alloclab
