#include "alloclab/product_distribution.hpp"

#include "alloclab/errors.hpp"

#include <boost/multiprecision/integer.hpp>

namespace alloclab {

std::size_t ProductDistribution::support_size() const {
    std::size_t base = 0;
    for (const Rational& p : factor.table())
        if (p != 0) ++base;
    return checked_pow(base, static_cast<unsigned>(coordinates));
}

ProductSampler::ProductSampler(const ProductDistribution& p, std::uint64_t seed)
    : p_(p), rng_(seed) {
    auto weights = p.factor.integer_weights();
    den_ = weights.den;
    BigInt acc(0);
    for (std::size_t c = 0; c < weights.weight.size(); ++c) {
        if (weights.weight[c] == 0) continue;
        acc += weights.weight[c];
        support_.push_back(c);
        cumulative_.push_back(acc);
    }
    den_bits_ = boost::multiprecision::msb(den_) + 1;
}

std::size_t ProductSampler::draw_tuple_code() {
    // uniform BigInt below den_ by rejection on den_bits_ random bits
    BigInt v;
    do {
        v = 0;
        unsigned remaining = den_bits_;
        while (remaining > 0) {
            const unsigned take = remaining >= 64 ? 64 : remaining;
            std::uint64_t chunk = rng_();
            if (take < 64) chunk &= (std::uint64_t(1) << take) - 1;
            v <<= take;
            v |= BigInt(chunk);
            remaining -= take;
        }
    } while (v >= den_);
    // first cumulative weight strictly above v
    std::size_t lo = 0, hi = cumulative_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cumulative_[mid] > v)
            hi = mid;
        else
            lo = mid + 1;
    }
    return support_[lo];
}

std::vector<Point> ProductSampler::draw() {
    const int k = p_.arity();
    const int R = p_.coordinates;
    const int m = p_.alphabet();
    std::vector<std::vector<int>> entries(static_cast<std::size_t>(k),
                                          std::vector<int>(static_cast<std::size_t>(R)));
    for (int i = 0; i < R; ++i) {
        std::size_t code = draw_tuple_code();
        for (int j = 0; j < k; ++j) {
            entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                static_cast<int>(code % static_cast<std::size_t>(m));
            code /= static_cast<std::size_t>(m);
        }
    }
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(k));
    for (auto& e : entries) points.emplace_back(std::move(e), m);
    return points;
}

std::vector<Point> sample_product(const ProductDistribution& p, std::uint64_t seed) {
    return ProductSampler(p, seed).draw();
}

namespace {

struct SupportWalker {
    const ProductDistribution& p;
    const std::function<void(const std::vector<PointCode>&, const Rational&)>& visit;
    std::vector<std::size_t> support;
    std::vector<std::vector<int>> digits;  // per support tuple, k digits
    std::vector<Rational> probs;           // per support tuple
    std::vector<PointCode> codes;          // running point codes, one per slot
    std::vector<PointCode> place;          // alphabet^depth per depth

    void walk(int depth, const Rational& prob_so_far) {
        if (depth == p.coordinates) {
            visit(codes, prob_so_far);
            return;
        }
        for (std::size_t s = 0; s < support.size(); ++s) {
            const auto& ds = digits[s];
            for (int j = 0; j < p.arity(); ++j)
                codes[static_cast<std::size_t>(j)] +=
                    static_cast<PointCode>(ds[static_cast<std::size_t>(j)]) * place[static_cast<std::size_t>(depth)];
            walk(depth + 1, prob_so_far * probs[s]);
            for (int j = 0; j < p.arity(); ++j)
                codes[static_cast<std::size_t>(j)] -=
                    static_cast<PointCode>(ds[static_cast<std::size_t>(j)]) * place[static_cast<std::size_t>(depth)];
        }
    }
};

}  // namespace

void for_each_support(const ProductDistribution& p, std::uint64_t max_leaves,
                      const std::function<void(const std::vector<PointCode>&, const Rational&)>& visit) {
    const std::size_t leaves = p.support_size();
    if (leaves > max_leaves)
        throw ResourceLimitError(
            "exact support enumeration needs " + std::to_string(leaves) + " leaves, cap is " +
            std::to_string(max_leaves) + "; rerun in Monte Carlo mode");

    SupportWalker walker{p, visit, p.factor.support(), {}, {}, {}, {}};
    walker.digits.reserve(walker.support.size());
    walker.probs.reserve(walker.support.size());
    for (std::size_t c : walker.support) {
        walker.digits.push_back(p.factor.decode(c));
        walker.probs.push_back(p.factor.prob(c));
    }
    walker.codes.assign(static_cast<std::size_t>(p.arity()), 0);
    walker.place.resize(static_cast<std::size_t>(p.coordinates));
    PointCode pl = 1;
    for (int i = 0; i < p.coordinates; ++i) {
        walker.place[static_cast<std::size_t>(i)] = pl;
        pl *= static_cast<PointCode>(p.alphabet());
    }
    walker.walk(0, Rational(1));
}

}  // namespace alloclab
