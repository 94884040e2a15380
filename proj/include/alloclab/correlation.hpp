#pragma once

#include "alloclab/function_table.hpp"
#include "alloclab/product_distribution.hpp"

#include <cstdint>
#include <vector>

namespace alloclab {

struct CorrelationCaps {
    int max_coordinates = 4;  // exact mode refuses larger R
};

// E[prod_j f_j(x^j)] where (x^1,...,x^k) is drawn from the R-fold product p.
// Exact over the support of p: all arithmetic is integer over the common
// denominators, the two final slots are contracted as a product kernel so
// the sum never walks the full (q+1)^{kR} grid. Throws ResourceLimitError
// beyond the coordinate cap; use correlation_monte_carlo there instead.
Rational correlation_exact(const std::vector<FunctionTable>& fs, const ProductDistribution& p,
                           const CorrelationCaps& caps = {});

// Sampled estimate; never substitutes silently for the exact mode. The
// estimate is the exact rational mean of the sampled products.
struct MonteCarloCorrelation {
    Rational estimate;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

MonteCarloCorrelation correlation_monte_carlo(const std::vector<FunctionTable>& fs,
                                              const ProductDistribution& p,
                                              std::uint64_t samples, std::uint64_t seed);

}  // namespace alloclab
