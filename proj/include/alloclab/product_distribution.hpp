#pragma once

#include "alloclab/point.hpp"
#include "alloclab/tuple_distribution.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace alloclab {

// The R-fold coordinate-wise product of a tuple distribution: a law over
// k points of length R where the i-th coordinate tuple (x^1_i,...,x^k_i)
// is an independent draw from the factor. Never materialized as a joint
// table; consumers stream its support or sample from it.
struct ProductDistribution {
    TupleDistribution factor;
    int coordinates;  // R

    ProductDistribution(TupleDistribution f, int R) : factor(std::move(f)), coordinates(R) {
        if (R < 1) throw InvalidParameterError("product distribution needs R >= 1");
    }

    int arity() const { return factor.arity(); }
    int alphabet() const { return factor.alphabet(); }
    std::size_t point_space_size() const {
        return checked_pow(static_cast<std::size_t>(factor.alphabet()),
                           static_cast<unsigned>(coordinates));
    }
    // (#nonzero factor entries)^R; throws ResourceLimitError on overflow.
    std::size_t support_size() const;
};

// Default cap on exact support enumeration: 81^4 leaves (R <= 4 at q = 2).
inline constexpr std::uint64_t kDefaultSupportCap = 43046721ull;

// One draw of k points of length R, coordinate tuples independent from the
// factor. Repeated draws share the sampler so cumulative weights are built
// once.
class ProductSampler {
public:
    ProductSampler(const ProductDistribution& p, std::uint64_t seed);
    std::vector<Point> draw();

private:
    std::size_t draw_tuple_code();
    const ProductDistribution& p_;
    std::vector<std::size_t> support_;
    std::vector<BigInt> cumulative_;  // over support_, ascending
    BigInt den_;
    unsigned den_bits_;
    std::mt19937_64 rng_;
};

std::vector<Point> sample_product(const ProductDistribution& p, std::uint64_t seed);

// Streams every support element with its exact probability. codes[j] is the
// point code of slot j's point (j = 0..k-1). Probabilities visited sum to 1.
// Throws ResourceLimitError when support_size() exceeds max_leaves.
void for_each_support(const ProductDistribution& p, std::uint64_t max_leaves,
                      const std::function<void(const std::vector<PointCode>&, const Rational&)>& visit);

}  // namespace alloclab
