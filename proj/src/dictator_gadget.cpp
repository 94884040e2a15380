#include "alloclab/dictator_gadget.hpp"

#include "alloclab/errors.hpp"

#include <string>

namespace alloclab {

int chi(const std::vector<int>& w) {
    for (std::size_t j = 0; j < w.size(); ++j)
        if (w[j] == 0) return static_cast<int>(j) + 1;
    return 0;
}

namespace {

ProductDistribution make_gadget_distribution(int R, int q, const Rational& eps) {
    TupleDistribution base = TupleDistribution::eta(q);
    if (eps == 0) return ProductDistribution(std::move(base), R);
    return ProductDistribution(base.with_noise(eps), R);
}

}  // namespace

DictatorTestInstance::DictatorTestInstance(int R, int q, Rational eps)
    : R_(R), q_(q), eps_(std::move(eps)), p_(make_gadget_distribution(R, q, eps_)) {
    if (eps_ < 0 || eps_ >= 1)
        throw InvalidParameterError("dictator test needs eps in [0,1)");
}

std::size_t DictatorTestInstance::agent_count() const {
    return checked_pow(static_cast<std::size_t>(q_ + 1), static_cast<unsigned>(R_));
}

std::size_t DictatorTestInstance::large_good_count() const {
    return static_cast<std::size_t>(q_) *
           checked_pow(static_cast<std::size_t>(q_ + 1), static_cast<unsigned>(R_ - 1));
}

Rational DictatorTestInstance::large_value() const {
    if (eps_ == 0)
        throw InvalidParameterError("the noiseless analysis instance has no large-good value");
    return Rational(1) / eps_;
}

DictatorTestInstance build_dictator_test(int R, int q, const Rational& eps) {
    return DictatorTestInstance(R, q, eps);
}

std::vector<Rational> completeness_utilities(const DictatorTestInstance& inst, int i,
                                             std::uint64_t max_leaves) {
    const int R = inst.R();
    if (i < 1 || i > R) throw DimensionError("coordinate out of range");
    const int k = inst.p().arity();
    const int m = inst.p().alphabet();
    const std::size_t leaves = inst.p().support_size();
    if (leaves > max_leaves)
        throw ResourceLimitError("completeness enumeration needs " + std::to_string(leaves) +
                                 " leaves, cap is " + std::to_string(max_leaves));

    const auto weights = inst.p().factor.integer_weights();
    struct SupportEntry {
        BigInt weight;
        std::vector<int> digits;
        int chi_slot;  // 1-based slot of the first zero, 0 when none
    };
    std::vector<SupportEntry> support;
    for (std::size_t c = 0; c < weights.weight.size(); ++c) {
        if (weights.weight[c] == 0) continue;
        auto digits = inst.p().factor.decode(c);
        const int slot = chi(digits);
        support.push_back({weights.weight[c], std::move(digits), slot});
    }

    std::vector<BigInt> acc(inst.agent_count(), BigInt(0));
    std::vector<PointCode> codes(static_cast<std::size_t>(k), 0);
    std::vector<PointCode> place(static_cast<std::size_t>(R));
    PointCode pl = 1;
    for (int c = 0; c < R; ++c) {
        place[static_cast<std::size_t>(c)] = pl;
        pl *= static_cast<PointCode>(m);
    }
    const int queried = i - 1;

    // walks the support of the product coordinate by coordinate, carrying the
    // running weight and the k partial point codes; `slot` is chi of the
    // queried coordinate's tuple (slot 1 when chi = 0)
    auto walk = [&](auto&& self, int depth, const BigInt& weight_so_far, int slot) -> void {
        if (depth == R) {
            const int t = slot > 0 ? slot : 1;
            acc[codes[static_cast<std::size_t>(t - 1)]] += weight_so_far;
            return;
        }
        for (const auto& entry : support) {
            for (int j = 0; j < k; ++j)
                codes[static_cast<std::size_t>(j)] +=
                    static_cast<PointCode>(entry.digits[static_cast<std::size_t>(j)]) *
                    place[static_cast<std::size_t>(depth)];
            self(self, depth + 1, weight_so_far * entry.weight,
                 depth == queried ? entry.chi_slot : slot);
            for (int j = 0; j < k; ++j)
                codes[static_cast<std::size_t>(j)] -=
                    static_cast<PointCode>(entry.digits[static_cast<std::size_t>(j)]) *
                    place[static_cast<std::size_t>(depth)];
        }
    };
    walk(walk, 0, BigInt(1), 0);

    BigInt den(1);
    for (int c = 0; c < R; ++c) den *= weights.den;
    std::vector<Rational> utilities;
    utilities.reserve(acc.size());
    for (const BigInt& a : acc) utilities.emplace_back(a, den);
    return utilities;
}

Rational soundness_value(const DictatorTestInstance& inst, const FunctionTable& f,
                         const CorrelationCaps& caps) {
    if (f.coordinates() != inst.R() || f.q() != inst.q())
        throw DimensionError("function shape does not match the instance");
    if (!f.is_boolean())
        throw InvalidParameterError("soundness needs a {0,1}-valued function");
    if (f.mean() != Rational(inst.q(), inst.q() + 1))
        throw InvalidParameterError("soundness needs mean q/(q+1), matching the large-good count");
    std::vector<FunctionTable> fs(static_cast<std::size_t>(inst.p().arity()), f);
    return Rational(1) - correlation_exact(fs, inst.p(), caps);
}

FunctionTable function_from_allocation(const DictatorTestInstance& inst,
                                       const Allocation& large_assignment) {
    if (large_assignment.assignment.size() != inst.large_good_count())
        throw DimensionError("expected one assignment entry per large good");
    std::vector<Rational> values(inst.agent_count(), Rational(0));
    for (const auto& holder : large_assignment.assignment) {
        if (!holder) continue;
        if (*holder < 0 || static_cast<std::size_t>(*holder) >= values.size())
            throw InvalidParameterError("assignment names an unknown agent");
        if (values[static_cast<std::size_t>(*holder)] == 1)
            throw InvalidAllocationError("agent holds two large goods");
        values[static_cast<std::size_t>(*holder)] = 1;
    }
    return FunctionTable(inst.R(), inst.q(), std::move(values));
}

AllocationInstance materialize(const DictatorTestInstance& inst) {
    if (inst.R() != 1 || inst.q() > 2)
        throw ResourceLimitError("explicit gadget instances are limited to R = 1, q <= 2");
    const Rational large_value = inst.large_value();  // rejects eps == 0

    AllocationInstance out;
    out.n_agents = static_cast<int>(inst.agent_count());
    for (std::size_t t = 0; t < inst.large_good_count(); ++t) {
        Good g;
        g.id = "large-" + std::to_string(t);
        g.is_large = true;
        for (int a = 0; a < out.n_agents; ++a) g.values.emplace_back(a, large_value);
        out.goods.push_back(std::move(g));
    }
    const auto& factor = inst.p().factor;
    for (std::size_t c : factor.support()) {
        Good g;
        g.id = "small-" + std::to_string(c);
        const auto digits = factor.decode(c);
        const Rational& prob = factor.prob(c);
        for (int a = 0; a < out.n_agents; ++a) {
            // R = 1: slot digits are the agents themselves; value once per agent
            bool named = false;
            for (int d : digits)
                if (d == a) named = true;
            if (named) g.values.emplace_back(a, prob);
        }
        out.goods.push_back(std::move(g));
    }
    std::vector<int> everyone(static_cast<std::size_t>(out.n_agents));
    for (int a = 0; a < out.n_agents; ++a) everyone[static_cast<std::size_t>(a)] = a;
    out.groups = {{everyone}};
    out.validate();
    return out;
}

}  // namespace alloclab
