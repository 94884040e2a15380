#pragma once

#include "alloclab/allocation.hpp"
#include "alloclab/correlation.hpp"
#include "alloclab/function_table.hpp"
#include "alloclab/product_distribution.hpp"

#include <vector>

namespace alloclab {

// 1-based index of the first zero entry of w; 0 when no entry is zero.
int chi(const std::vector<int>& w);

// The dictator-test instance: (q+1)^R agents, one implicit small good per
// support tuple of the R-fold product of the noisy base distribution, and
// q*(q+1)^{R-1} large goods valued 1/eps by everyone. Small goods carry the
// tuple's probability as value, so their total value is exactly 1.
// eps == 0 builds the noiseless analysis variant (no large-good value).
class DictatorTestInstance {
public:
    DictatorTestInstance(int R, int q, Rational eps);

    int R() const { return R_; }
    int q() const { return q_; }
    const Rational& eps() const { return eps_; }
    const ProductDistribution& p() const { return p_; }

    std::size_t agent_count() const;       // (q+1)^R
    std::size_t large_good_count() const;  // q*(q+1)^{R-1}
    Rational large_value() const;          // 1/eps; requires eps > 0
    Rational small_good_total_value() const { return Rational(1); }

private:
    int R_;
    int q_;
    Rational eps_;
    ProductDistribution p_;
};

DictatorTestInstance build_dictator_test(int R, int q, const Rational& eps);

// Small-good utility per agent when every good goes to the slot picked by
// chi on the tuple's i-th coordinate slice (slot 1 when chi is 0); i is
// 1-based. Every agent with x_i = 0 ends up with at least
// (1-eps)/(q+1)^{R-1}.
std::vector<Rational> completeness_utilities(const DictatorTestInstance& inst, int i,
                                             std::uint64_t max_leaves = kDefaultSupportCap);

// The exact ceiling 1 - E[prod_j f(x^j)] on the total small-good utility of
// agents outside the large-good set encoded by f. Requires f to be
// {0,1}-valued with mean q/(q+1), matching the large-good count.
Rational soundness_value(const DictatorTestInstance& inst, const FunctionTable& f,
                         const CorrelationCaps& caps = {});

// The {0,1} table marking agents that hold a large good. large_assignment
// must cover exactly the instance's large goods; an agent holding two large
// goods is rejected.
FunctionTable function_from_allocation(const DictatorTestInstance& inst,
                                       const Allocation& large_assignment);

// Explicit form: large goods first ("large-<t>"), then one good per support
// tuple ("small-<code>"), one agent group spanning everyone. Only available
// at R = 1, q <= 2 and eps > 0.
AllocationInstance materialize(const DictatorTestInstance& inst);

}  // namespace alloclab
