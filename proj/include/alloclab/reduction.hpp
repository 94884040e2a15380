#pragma once

#include "alloclab/allocation.hpp"
#include "alloclab/correlation.hpp"
#include "alloclab/function_table.hpp"
#include "alloclab/product_distribution.hpp"
#include "alloclab/unique_games.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace alloclab {

// The allocation instance built from a unique-games instance over alphabet
// {0,1,2}: one agent per (a, x), per a-group 2*3^{R-1} large goods valued
// 1/eps inside the group, implicit small goods weighted by sampling
// (b, four incident edges, coordinate tuples), and floor(delta*|A|)*3^{R-1}
// dummy goods valued (1-eps)/(|A|*3^{R-1}) by everyone, with
// delta = eps*tau^2/(8d).
class MetaInstance {
public:
    MetaInstance(UgInstance ug, Rational eps, int d, Rational tau);

    const UgInstance& ug() const { return ug_; }
    const Rational& eps() const { return eps_; }
    int d() const { return d_; }
    const Rational& tau() const { return tau_; }
    Rational delta() const;  // eps*tau^2/(8d)
    int R() const { return ug_.labels(); }
    const ProductDistribution& p() const { return p_; }

    std::size_t agents_per_group() const;  // 3^R
    std::size_t agent_count() const;       // |A| * 3^R
    std::size_t agent_index(int a, PointCode x) const;

    std::size_t large_per_group() const;  // 2*3^{R-1}
    Rational large_value() const;         // 1/eps
    std::size_t dummy_good_count() const;
    Rational dummy_value() const;
    Rational dummy_total_value() const;

    // Goods with positive value; zero-valued tuples are never materialized.
    std::size_t positive_small_good_count() const;
    Rational small_good_total_value() const { return Rational(1); }

private:
    UgInstance ug_;
    Rational eps_;
    int d_;
    Rational tau_;
    ProductDistribution p_;
};

MetaInstance build_meta_instance(const UgInstance& ug, const Rational& eps, int d, const Rational& tau);

struct YesAllocationResult {
    std::vector<Rational> utility;      // indexed by agent_index
    std::vector<std::uint8_t> has_large;
    std::size_t dummies_used = 0;

    // smallest utility among agents without a large good
    Rational min_non_large_utility() const;
};

// The allocation that certifies the YES side: for a in a_prime (which the
// labeling must fully satisfy), large goods go to agents with
// x_{label(a)} > 0 and small goods follow the first-zero rule on coordinate
// label(b); other groups hand large goods to the lexicographically first
// agents and dummy goods to the rest. Throws when the dummy supply cannot
// cover the deficient groups.
YesAllocationResult yes_allocation(const MetaInstance& inst, const Labeling& labeling,
                                   const std::vector<int>& a_prime,
                                   std::uint64_t max_leaves = kDefaultSupportCap);

struct NoCaseCaps {
    std::size_t max_outer = 64;  // |B| * degree_b^4
    int max_coordinates = 3;
};

// The exact ceiling on the total utility of agents without large goods for
// the allocation encoded by the per-group functions f_a:
// dummy total + 1 - E[prod_j f_{a^j}(x^j o pi_{a^j,b})].
// Each f_a must be {0,1}-valued with mean 2/3.
Rational no_case_bound(const MetaInstance& inst, const std::vector<FunctionTable>& fa,
                       const NoCaseCaps& caps = {});

// Explicit form with groups, for the family validator and solver oracles.
AllocationInstance materialize_meta(const MetaInstance& inst, std::size_t max_goods = 1000000);

// The same construction re-scaled for the assignment problem: large goods
// valued c/(|A|*3^R) with size 1, every other good sized 1/(2m) for m total
// goods, every agent capacity 1.
class GapInstance {
public:
    GapInstance(MetaInstance meta, Rational c);

    const MetaInstance& meta() const { return meta_; }
    const Rational& c() const { return c_; }
    Rational large_value() const;
    std::size_t total_good_count() const;
    Rational small_size() const;  // 1/(2m)
    Rational capacity() const { return Rational(1); }

private:
    MetaInstance meta_;
    Rational c_;
};

GapInstance build_gap_instance(const UgInstance& ug, const Rational& eps, int d, const Rational& tau,
                               const Rational& c);

// YES-side utilitarian welfare (1-eps) + 2c/3; equals 145/81 - eps at the
// canonical c = 32/27.
Rational gap_yes_usw(const GapInstance& inst);

AllocationInstance materialize_gap(const GapInstance& inst, std::size_t max_goods = 1000000);

// x^4 - c*x and its exact minimum over a [0,1] grid refined with thirds.
Rational gap_poly(const Rational& x, const Rational& c);
struct GridMinimum {
    Rational value;
    Rational argmin;
};
GridMinimum gap_poly_grid_min(const Rational& c, int grid_steps);

// 4 x^3 == c at x = 2/3 for c = 32/27, and the value there is -48/81.
bool gap_stationary_point_check();

// NO-side formula (1 + 4 eps) + 48/81; true when it is at most 129/81 + 5 eps.
bool gap_no_side_check(const Rational& eps);

// One proof-final ratio bound. For the Nash objective the exact quantities
// are the cubes (the cube root is irrational); yes/no are the cubed chain
// endpoints and `decimal` renders the cube root.
struct RatioBound {
    std::string objective;  // "nash" | "budgeted" | "gap"
    Rational yes_value;
    Rational no_value;
    Rational ratio_bound;  // yes/no, exact (cubed for nash)
    bool ratio_is_cubed = false;
    bool chain_holds = false;
    double decimal = 0.0;
};

struct BoundReport {
    Rational eps;
    std::vector<RatioBound> bounds;  // nash, budgeted, gap
};

// Evaluates the three ratio lower bounds exactly at a given eps in (0, 1/100]:
//   nash^3  >= (81/65)(1-eps)/(1+5eps)^3 >= (81/65)(1-eps)^3(1-10eps)^3
//   budget  >= 3(1-eps)/(227/81+eps) >= (243/227)(1-eps)^2 >= 243/227 - 4eps
//   gap     >= (145/81-eps)/(129/81+5eps) >= (145/129)(1-5eps)-eps >= 145/129 - 11eps
BoundReport ratio_bounds(const Rational& eps);

}  // namespace alloclab
