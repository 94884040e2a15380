#pragma once

#include "alloclab/function_table.hpp"

#include <cstdint>
#include <vector>

namespace alloclab {

// Coordinate subsets of [R] as bitmasks; bit i-1 stands for coordinate i.
using SubsetMask = std::uint32_t;

struct EfronSteinOptions {
    int max_coordinates = 8;  // 2^R * (q+1)^R work cap
    bool validate = true;     // check the defining properties exactly on construction
};

// The unique expansion f = sum_S f_S where f_S depends only on the
// coordinates in S and every f_S has zero mean along each coordinate of S
// (conditioned on any values of the remaining coordinates). Built by
// inclusion-exclusion over conditional means and checked exactly.
class EfronSteinDecomposition {
public:
    static EfronSteinDecomposition compute(const FunctionTable& f, const EfronSteinOptions& opts = {});

    int coordinates() const { return R_; }
    std::size_t subset_count() const { return components_.size(); }
    const std::vector<Rational>& component(SubsetMask S) const { return components_.at(S); }

    // E[f_S^2] under the uniform distribution.
    const Rational& component_weight(SubsetMask S) const { return weights_.at(S); }

    // Reassembles sum_S f_S (used by reconstruction checks).
    FunctionTable reconstruct() const;

    int rank() const { return R_; }
    int alphabet() const { return alphabet_; }

private:
    int R_ = 0;
    int alphabet_ = 0;
    std::vector<std::vector<Rational>> components_;  // indexed by mask
    std::vector<Rational> weights_;                  // E[f_S^2] per mask
};

// Per-coordinate influence pairs (Inf_i, Inf_i^{<=d}); index 0 holds
// coordinate 1. Influence of coordinate i is the total weight E[f_S^2]
// over subsets containing i, the degree-d variant restricts to |S| <= d.
struct InfluenceProfile {
    int degree = 0;  // d
    std::vector<Rational> influence;
    std::vector<Rational> degree_influence;

    const Rational& inf(int i) const { return influence.at(static_cast<std::size_t>(i - 1)); }
    const Rational& inf_le(int i) const { return degree_influence.at(static_cast<std::size_t>(i - 1)); }
    Rational max_degree_influence() const;
    // #{i : Inf_i^{<=d} >= tau}
    int count_at_least(const Rational& tau) const;
};

InfluenceProfile influence_profile(const FunctionTable& f, int d, const EfronSteinOptions& opts = {});

InfluenceProfile influence_profile(const EfronSteinDecomposition& dec, int d);

}  // namespace alloclab
