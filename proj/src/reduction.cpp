#include "alloclab/reduction.hpp"

#include "alloclab/constants.hpp"
#include "alloclab/dictator_gadget.hpp"
#include "alloclab/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

namespace alloclab {

MetaInstance::MetaInstance(UgInstance ug, Rational eps, int d, Rational tau)
    : ug_(std::move(ug)),
      eps_(std::move(eps)),
      d_(d),
      tau_(std::move(tau)),
      p_(TupleDistribution::eta(2).with_noise(eps_), ug_.labels()) {
    if (eps_ <= 0 || eps_ >= 1) throw InvalidParameterError("reduction needs eps in (0,1)");
    if (d_ < 1) throw InvalidParameterError("reduction needs d >= 1");
    if (tau_ <= 0 || tau_ > 1) throw InvalidParameterError("reduction needs tau in (0,1]");
}

Rational MetaInstance::delta() const { return eps_ * tau_ * tau_ / Rational(8 * d_); }

std::size_t MetaInstance::agents_per_group() const {
    return checked_pow(3, static_cast<unsigned>(R()));
}

std::size_t MetaInstance::agent_count() const {
    return static_cast<std::size_t>(ug_.a_nodes()) * agents_per_group();
}

std::size_t MetaInstance::agent_index(int a, PointCode x) const {
    return static_cast<std::size_t>(a) * agents_per_group() + static_cast<std::size_t>(x);
}

std::size_t MetaInstance::large_per_group() const {
    return 2 * checked_pow(3, static_cast<unsigned>(R() - 1));
}

Rational MetaInstance::large_value() const { return Rational(1) / eps_; }

std::size_t MetaInstance::dummy_good_count() const {
    // floor(delta * |A|) * 3^{R-1}
    const Rational scaled = delta() * ug_.a_nodes();
    const BigInt whole = numerator(scaled) / denominator(scaled);
    return whole.convert_to<std::size_t>() * checked_pow(3, static_cast<unsigned>(R() - 1));
}

Rational MetaInstance::dummy_value() const {
    return (Rational(1) - eps_) / Rational(BigInt(ug_.a_nodes()) * BigInt(agents_per_group()) / 3);
}

Rational MetaInstance::dummy_total_value() const {
    return dummy_value() * Rational(BigInt(dummy_good_count()));
}

std::size_t MetaInstance::positive_small_good_count() const {
    const std::size_t per_pick = p_.support_size();
    std::size_t degree_pow = 1;
    for (int t = 0; t < 4; ++t) degree_pow *= static_cast<std::size_t>(ug_.degree_b());
    return static_cast<std::size_t>(ug_.b_nodes()) * degree_pow * per_pick;
}

MetaInstance build_meta_instance(const UgInstance& ug, const Rational& eps, int d, const Rational& tau) {
    return MetaInstance(ug, eps, d, tau);
}

Rational YesAllocationResult::min_non_large_utility() const {
    Rational best;
    bool found = false;
    for (std::size_t i = 0; i < utility.size(); ++i) {
        if (has_large[i]) continue;
        if (!found || utility[i] < best) {
            best = utility[i];
            found = true;
        }
    }
    if (!found) throw InvalidParameterError("every agent holds a large good");
    return best;
}

namespace {

struct SupportEntry {
    BigInt weight;
    std::vector<int> digits;  // k slot digits
    int chi_slot;             // 1-based first-zero slot, 0 when none
};

std::vector<SupportEntry> gadget_support(const ProductDistribution& p) {
    const auto weights = p.factor.integer_weights();
    std::vector<SupportEntry> support;
    for (std::size_t c = 0; c < weights.weight.size(); ++c) {
        if (weights.weight[c] == 0) continue;
        auto digits = p.factor.decode(c);
        const int slot = chi(digits);
        support.push_back({weights.weight[c], std::move(digits), slot});
    }
    return support;
}

}  // namespace

YesAllocationResult yes_allocation(const MetaInstance& inst, const Labeling& labeling,
                                   const std::vector<int>& a_prime, std::uint64_t max_leaves) {
    const UgInstance& ug = inst.ug();
    const int R = inst.R();
    const int k = 4;
    const int m = 3;

    if (static_cast<int>(labeling.a_labels.size()) != ug.a_nodes() ||
        static_cast<int>(labeling.b_labels.size()) != ug.b_nodes())
        throw DimensionError("labeling must cover all nodes");

    std::vector<bool> in_prime(static_cast<std::size_t>(ug.a_nodes()), false);
    for (int a : a_prime) {
        if (a < 0 || a >= ug.a_nodes()) throw InvalidParameterError("a_prime names an unknown node");
        in_prime[static_cast<std::size_t>(a)] = true;
    }
    for (const auto& edge : ug.edges()) {
        if (!in_prime[static_cast<std::size_t>(edge.a)]) continue;
        if (edge.pi.apply(labeling.a_labels[static_cast<std::size_t>(edge.a)]) !=
            labeling.b_labels[static_cast<std::size_t>(edge.b)])
            throw InvalidParameterError("labeling must satisfy every edge incident to a_prime");
    }

    const std::size_t deficient =
        static_cast<std::size_t>(ug.a_nodes()) - a_prime.size();
    const std::size_t per_group = inst.agents_per_group();
    const std::size_t third = per_group / 3;
    const std::size_t dummies_needed = deficient * third;
    if (dummies_needed > inst.dummy_good_count())
        throw InvalidParameterError("dummy supply exceeded: " + std::to_string(dummies_needed) +
                                    " needed, " + std::to_string(inst.dummy_good_count()) + " available");

    const std::size_t leaves = inst.p().support_size();
    if (leaves > max_leaves)
        throw ResourceLimitError("yes-case enumeration exceeds the configured cap");

    YesAllocationResult result;
    result.utility.assign(inst.agent_count(), Rational(0));
    result.has_large.assign(inst.agent_count(), 0);
    result.dummies_used = dummies_needed;

    // large and dummy goods
    const Rational large_value = inst.large_value();
    const Rational dummy_value = inst.dummy_value();
    for (int a = 0; a < ug.a_nodes(); ++a) {
        if (in_prime[static_cast<std::size_t>(a)]) {
            const int label = labeling.a_labels[static_cast<std::size_t>(a)];
            const std::size_t stride = checked_pow(3, static_cast<unsigned>(label - 1));
            for (PointCode x = 0; x < per_group; ++x) {
                if ((x / stride) % 3 > 0) {
                    const std::size_t idx = inst.agent_index(a, x);
                    result.has_large[idx] = 1;
                    result.utility[idx] += large_value;
                }
            }
        } else {
            // lexicographically first agents take the large goods, the rest a dummy
            for (PointCode x = 0; x < per_group; ++x) {
                const std::size_t idx = inst.agent_index(a, x);
                if (static_cast<std::size_t>(x) < inst.large_per_group()) {
                    result.has_large[idx] = 1;
                    result.utility[idx] += large_value;
                } else {
                    result.utility[idx] += dummy_value;
                }
            }
        }
    }

    // small goods: enumerate (b, four incident edges, coordinate tuples)
    const auto support = gadget_support(inst.p());
    const auto weights_den = inst.p().factor.integer_weights().den;
    std::vector<BigInt> acc(inst.agent_count(), BigInt(0));

    std::vector<std::vector<int>> digit_matrix(static_cast<std::size_t>(k),
                                               std::vector<int>(static_cast<std::size_t>(R), 0));
    std::array<const UgEdge*, 4> picked{};

    for (int b = 0; b < ug.b_nodes(); ++b) {
        const int label_b = labeling.b_labels[static_cast<std::size_t>(b)];
        const auto& incident = ug.edges_of_b(b);
        // all 4-tuples of incident edges, with replacement
        std::vector<std::size_t> pick(4, 0);
        while (true) {
            for (int j = 0; j < 4; ++j)
                picked[static_cast<std::size_t>(j)] =
                    &ug.edges()[static_cast<std::size_t>(incident[pick[static_cast<std::size_t>(j)]])];

            auto walk = [&](auto&& self, int depth, const BigInt& weight_so_far, int slot) -> void {
                if (depth == R) {
                    const int t = slot > 0 ? slot : 1;
                    const UgEdge& edge = *picked[static_cast<std::size_t>(t - 1)];
                    // receiving agent (a^t, x^t o pi_{a^t,b})
                    PointCode y = 0;
                    PointCode pl = 1;
                    const auto& xt = digit_matrix[static_cast<std::size_t>(t - 1)];
                    for (int j = 0; j < R; ++j) {
                        y += static_cast<PointCode>(xt[static_cast<std::size_t>(edge.pi.apply0(j))]) * pl;
                        pl *= static_cast<PointCode>(m);
                    }
                    acc[inst.agent_index(edge.a, y)] += weight_so_far;
                    return;
                }
                for (const auto& entry : support) {
                    for (int j = 0; j < k; ++j)
                        digit_matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(depth)] =
                            entry.digits[static_cast<std::size_t>(j)];
                    self(self, depth + 1, weight_so_far * entry.weight,
                         depth == label_b - 1 ? entry.chi_slot : slot);
                }
            };
            walk(walk, 0, BigInt(1), 0);

            int j = 3;
            while (j >= 0 && ++pick[static_cast<std::size_t>(j)] == incident.size()) {
                pick[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) break;
        }
    }

    BigInt den(1);
    for (int i = 0; i < R; ++i) den *= weights_den;
    den *= BigInt(ug.b_nodes());
    BigInt deg4(1);
    for (int t = 0; t < 4; ++t) deg4 *= ug.degree_b();
    den *= deg4;
    for (std::size_t idx = 0; idx < acc.size(); ++idx)
        if (acc[idx] != 0) result.utility[idx] += Rational(acc[idx], den);
    return result;
}

Rational no_case_bound(const MetaInstance& inst, const std::vector<FunctionTable>& fa,
                       const NoCaseCaps& caps) {
    const UgInstance& ug = inst.ug();
    if (static_cast<int>(fa.size()) != ug.a_nodes())
        throw DimensionError("need one function per a-node");
    const Rational target_mean(2, 3);
    for (const auto& f : fa) {
        if (f.coordinates() != inst.R() || f.q() != 2)
            throw DimensionError("function shape does not match the reduction");
        if (!f.is_boolean() || f.mean() != target_mean)
            throw InvalidParameterError("no-case functions must be {0,1}-valued with mean 2/3");
    }
    std::size_t outer = static_cast<std::size_t>(ug.b_nodes());
    for (int t = 0; t < 4; ++t) outer *= static_cast<std::size_t>(ug.degree_b());
    if (outer > caps.max_outer)
        throw ResourceLimitError("no-case bound cap: |B| * degree_b^4 <= " + std::to_string(caps.max_outer));
    if (inst.R() > caps.max_coordinates)
        throw ResourceLimitError("no-case bound cap: R <= " + std::to_string(caps.max_coordinates));

    // g_e(x) = f_{a(e)}(x o pi_e), one table per edge
    std::vector<FunctionTable> composed;
    composed.reserve(ug.edges().size());
    for (const auto& edge : ug.edges())
        composed.push_back(fa[static_cast<std::size_t>(edge.a)].compose(edge.pi));

    CorrelationCaps corr_caps;
    corr_caps.max_coordinates = caps.max_coordinates;

    Rational corr_sum(0);
    for (int b = 0; b < ug.b_nodes(); ++b) {
        const auto& incident = ug.edges_of_b(b);
        std::vector<std::size_t> pick(4, 0);
        while (true) {
            std::vector<FunctionTable> fs;
            fs.reserve(4);
            for (int j = 0; j < 4; ++j)
                fs.push_back(composed[static_cast<std::size_t>(incident[pick[static_cast<std::size_t>(j)]])]);
            corr_sum += correlation_exact(fs, inst.p(), corr_caps);

            int j = 3;
            while (j >= 0 && ++pick[static_cast<std::size_t>(j)] == incident.size()) {
                pick[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) break;
        }
    }
    const Rational expectation = corr_sum / Rational(BigInt(outer));
    return inst.dummy_total_value() + Rational(1) - expectation;
}

namespace {

// Shared scaffolding for the two explicit forms: group structure, large,
// dummy and small goods; the shaping callback tweaks values and sizes.
AllocationInstance materialize_common(const MetaInstance& inst, std::size_t max_goods,
                                      const Rational& large_value,
                                      const std::optional<Rational>& uniform_small_size,
                                      bool with_capacities) {
    const UgInstance& ug = inst.ug();
    const std::size_t per_group = inst.agents_per_group();
    const std::size_t total_goods = inst.positive_small_good_count() +
                                    static_cast<std::size_t>(ug.a_nodes()) * inst.large_per_group() +
                                    inst.dummy_good_count();
    if (total_goods > max_goods)
        throw ResourceLimitError("explicit instance would have " + std::to_string(total_goods) +
                                 " goods, cap is " + std::to_string(max_goods));

    AllocationInstance out;
    out.n_agents = static_cast<int>(inst.agent_count());

    for (int a = 0; a < ug.a_nodes(); ++a) {
        for (std::size_t t = 0; t < inst.large_per_group(); ++t) {
            Good g;
            g.id = "large-" + std::to_string(a) + "-" + std::to_string(t);
            g.is_large = true;
            if (uniform_small_size) g.size = Rational(1);
            for (PointCode x = 0; x < per_group; ++x)
                g.values.emplace_back(static_cast<int>(inst.agent_index(a, x)), large_value);
            out.goods.push_back(std::move(g));
        }
    }
    for (std::size_t t = 0; t < inst.dummy_good_count(); ++t) {
        Good g;
        g.id = "dummy-" + std::to_string(t);
        if (uniform_small_size) g.size = *uniform_small_size;
        for (int agent = 0; agent < out.n_agents; ++agent)
            g.values.emplace_back(agent, inst.dummy_value());
        out.goods.push_back(std::move(g));
    }

    // small goods: one per (b, edge 4-tuple, support tuple per coordinate)
    const auto& factor = inst.p().factor;
    const auto codes = factor.support();
    const int R = inst.R();
    BigInt scale = BigInt(ug.b_nodes());
    for (int t = 0; t < 4; ++t) scale *= ug.degree_b();
    const Rational outer_weight = Rational(1, scale);

    std::vector<std::vector<int>> support_digits;
    std::vector<Rational> support_probs;
    for (std::size_t c : codes) {
        support_digits.push_back(factor.decode(c));
        support_probs.push_back(factor.prob(c));
    }

    for (int b = 0; b < ug.b_nodes(); ++b) {
        const auto& incident = ug.edges_of_b(b);
        std::vector<std::size_t> pick(4, 0);
        std::size_t combo = 0;
        while (true) {
            // recursive over coordinates choosing support entries
            std::vector<std::size_t> chosen(static_cast<std::size_t>(R), 0);
            std::size_t leaf = 0;
            auto walk = [&](auto&& self, int depth, const Rational& prob) -> void {
                if (depth == R) {
                    Good g;
                    g.id = "small-" + std::to_string(b) + "-" + std::to_string(combo) + "-" +
                           std::to_string(leaf++);
                    if (uniform_small_size) g.size = *uniform_small_size;
                    const Rational value = prob * outer_weight;
                    std::map<std::size_t, bool> named;
                    for (int j = 0; j < 4; ++j) {
                        const UgEdge& edge =
                            ug.edges()[static_cast<std::size_t>(incident[pick[static_cast<std::size_t>(j)]])];
                        PointCode y = 0;
                        PointCode pl = 1;
                        for (int i = 0; i < R; ++i) {
                            const int digit =
                                support_digits[chosen[static_cast<std::size_t>(edge.pi.apply0(i))]]
                                              [static_cast<std::size_t>(j)];
                            y += static_cast<PointCode>(digit) * pl;
                            pl *= 3;
                        }
                        named.emplace(inst.agent_index(edge.a, y), true);
                    }
                    for (const auto& [agent, _] : named)
                        g.values.emplace_back(static_cast<int>(agent), value);
                    out.goods.push_back(std::move(g));
                    return;
                }
                for (std::size_t s = 0; s < support_digits.size(); ++s) {
                    chosen[static_cast<std::size_t>(depth)] = s;
                    self(self, depth + 1, prob * support_probs[s]);
                }
            };
            walk(walk, 0, Rational(1));

            ++combo;
            int j = 3;
            while (j >= 0 && ++pick[static_cast<std::size_t>(j)] == incident.size()) {
                pick[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) break;
        }
    }

    std::vector<std::vector<int>> groups;
    for (int a = 0; a < ug.a_nodes(); ++a) {
        std::vector<int> group;
        for (PointCode x = 0; x < per_group; ++x)
            group.push_back(static_cast<int>(inst.agent_index(a, x)));
        groups.push_back(std::move(group));
    }
    out.groups = std::move(groups);
    if (with_capacities)
        out.capacities = std::vector<Rational>(static_cast<std::size_t>(out.n_agents), Rational(1));
    out.validate();
    return out;
}

}  // namespace

AllocationInstance materialize_meta(const MetaInstance& inst, std::size_t max_goods) {
    return materialize_common(inst, max_goods, inst.large_value(), std::nullopt, false);
}

GapInstance::GapInstance(MetaInstance meta, Rational c) : meta_(std::move(meta)), c_(std::move(c)) {
    if (c_ <= 0) throw InvalidParameterError("gap scale c must be positive");
}

Rational GapInstance::large_value() const {
    return c_ / Rational(BigInt(meta_.ug().a_nodes()) * BigInt(meta_.agents_per_group()));
}

std::size_t GapInstance::total_good_count() const {
    return meta_.positive_small_good_count() +
           static_cast<std::size_t>(meta_.ug().a_nodes()) * meta_.large_per_group() +
           meta_.dummy_good_count();
}

Rational GapInstance::small_size() const {
    return Rational(1, 2 * BigInt(total_good_count()));
}

GapInstance build_gap_instance(const UgInstance& ug, const Rational& eps, int d, const Rational& tau,
                               const Rational& c) {
    return GapInstance(MetaInstance(ug, eps, d, tau), c);
}

Rational gap_yes_usw(const GapInstance& inst) {
    return (Rational(1) - inst.meta().eps()) + Rational(2) * inst.c() / 3;
}

AllocationInstance materialize_gap(const GapInstance& inst, std::size_t max_goods) {
    return materialize_common(inst.meta(), max_goods, inst.large_value(), inst.small_size(), true);
}

Rational gap_poly(const Rational& x, const Rational& c) {
    return rational_pow(x, 4) - c * x;
}

GridMinimum gap_poly_grid_min(const Rational& c, int grid_steps) {
    if (grid_steps < 1) throw InvalidParameterError("grid needs at least one step");
    std::vector<Rational> xs;
    for (int j = 0; j <= grid_steps; ++j) xs.emplace_back(j, grid_steps);
    xs.emplace_back(1, 3);
    xs.emplace_back(2, 3);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    GridMinimum best{gap_poly(xs.front(), c), xs.front()};
    for (const Rational& x : xs) {
        const Rational v = gap_poly(x, c);
        if (v < best.value) best = {v, x};
    }
    return best;
}

bool gap_stationary_point_check() {
    const Rational x = constants::gap_poly_argmin();
    return Rational(4) * rational_pow(x, 3) == constants::gap_c() &&
           gap_poly(x, constants::gap_c()) == constants::gap_poly_min();
}

bool gap_no_side_check(const Rational& eps) {
    const Rational lhs = (Rational(1) + 4 * eps) + Rational(48, 81);
    return lhs <= constants::gap_no_base() + 5 * eps;
}

BoundReport ratio_bounds(const Rational& eps) {
    if (eps <= 0 || eps > Rational(1, 100))
        throw InvalidParameterError("ratio evaluation expects eps in (0, 1/100]");
    BoundReport report;
    report.eps = eps;
    const Rational one(1);

    {
        RatioBound nash;
        nash.objective = "nash";
        nash.yes_value = constants::nash_ratio_cubed() * (one - eps);
        nash.no_value = rational_pow(one + 5 * eps, 3);
        nash.ratio_bound = nash.yes_value / nash.no_value;
        nash.ratio_is_cubed = true;
        const Rational mid = constants::nash_ratio_cubed() * rational_pow(one - eps, 3) *
                             rational_pow(one - 10 * eps, 3);
        const Rational last = constants::nash_ratio_cubed() * rational_pow(one - 20 * eps, 3);
        nash.chain_holds = nash.ratio_bound >= mid && mid >= last;
        nash.decimal = std::cbrt(as_double(nash.ratio_bound));
        report.bounds.push_back(std::move(nash));
    }
    {
        RatioBound budget;
        budget.objective = "budgeted";
        budget.yes_value = 3 * (one - eps);
        budget.no_value = constants::budget_no_base() + eps;
        budget.ratio_bound = budget.yes_value / budget.no_value;
        const Rational mid = constants::budget_ratio() * rational_pow(one - eps, 2);
        const Rational last = constants::budget_ratio() - 4 * eps;
        budget.chain_holds = budget.ratio_bound >= mid && mid >= last;
        budget.decimal = as_double(budget.ratio_bound);
        report.bounds.push_back(std::move(budget));
    }
    {
        RatioBound gap;
        gap.objective = "gap";
        gap.yes_value = constants::gap_yes_base() - eps;
        gap.no_value = constants::gap_no_base() + 5 * eps;
        gap.ratio_bound = gap.yes_value / gap.no_value;
        const Rational mid = constants::gap_ratio() * (one - 5 * eps) - eps;
        const Rational last = constants::gap_ratio() - 11 * eps;
        gap.chain_holds = gap.ratio_bound >= mid && mid >= last;
        gap.decimal = as_double(gap.ratio_bound);
        report.bounds.push_back(std::move(gap));
    }
    return report;
}

}  // namespace alloclab
