#include "alloclab/tuple_distribution.hpp"

#include "alloclab/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <string>

namespace alloclab {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

TupleDistribution::TupleDistribution(int arity, int alphabet, std::vector<Rational> table)
    : arity_(arity), alphabet_(alphabet), table_(std::move(table)) {
    if (arity_ < 1) throw InvalidParameterError("distribution arity must be positive");
    if (alphabet_ < 2) throw InvalidParameterError("distribution alphabet must be at least 2");
    const std::size_t expected = checked_pow(static_cast<std::size_t>(alphabet_), static_cast<unsigned>(arity_));
    if (table_.size() != expected)
        throw DimensionError("distribution table has wrong size");
    Rational total(0);
    for (const Rational& p : table_) {
        if (p < 0) throw InvalidParameterError("distribution entries must be nonnegative");
        total += p;
    }
    if (total != 1) throw InvalidParameterError("distribution entries must sum to 1");
}

TupleDistribution TupleDistribution::eta(int q) {
    if (q < 1) throw InvalidParameterError("eta requires q >= 1");
    const int m = q + 1;
    if (!is_prime(m)) throw InvalidParameterError("eta requires q+1 prime, got q+1=" + std::to_string(m));
    const int arity = q + 2;
    std::vector<Rational> table(checked_pow(static_cast<std::size_t>(m), static_cast<unsigned>(arity)), Rational(0));
    const Rational mass(1, BigInt(m) * m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            // tuple (a, b, a+b, a+2b, ..., a+qb), slot 1 least significant
            std::size_t code = 0;
            std::size_t place = 1;
            code += static_cast<std::size_t>(a) * place;
            place *= static_cast<std::size_t>(m);
            code += static_cast<std::size_t>(b) * place;
            for (int t = 1; t <= q; ++t) {
                place *= static_cast<std::size_t>(m);
                code += static_cast<std::size_t>((a + t * b) % m) * place;
            }
            table[code] += mass;
        }
    }
    return TupleDistribution(arity, m, std::move(table));
}

TupleDistribution TupleDistribution::uniform(int arity, int alphabet) {
    const std::size_t size = checked_pow(static_cast<std::size_t>(alphabet), static_cast<unsigned>(arity));
    return TupleDistribution(arity, alphabet, std::vector<Rational>(size, Rational(1, BigInt(size))));
}

TupleDistribution TupleDistribution::point_mass(const std::vector<int>& tuple, int alphabet) {
    const int arity = static_cast<int>(tuple.size());
    const std::size_t size = checked_pow(static_cast<std::size_t>(alphabet), static_cast<unsigned>(arity));
    std::vector<Rational> table(size, Rational(0));
    std::size_t code = 0;
    std::size_t place = 1;
    for (int digit : tuple) {
        if (digit < 0 || digit >= alphabet) throw InvalidParameterError("point mass tuple entry outside alphabet");
        code += static_cast<std::size_t>(digit) * place;
        place *= static_cast<std::size_t>(alphabet);
    }
    table[code] = 1;
    return TupleDistribution(arity, alphabet, std::move(table));
}

TupleDistribution TupleDistribution::with_noise(const Rational& eps) const {
    if (eps <= 0 || eps >= 1)
        throw InvalidParameterError("noise level must lie strictly between 0 and 1");
    const Rational uniform_mass(1, BigInt(table_.size()));
    std::vector<Rational> mixed(table_.size());
    for (std::size_t c = 0; c < table_.size(); ++c)
        mixed[c] = (1 - eps) * table_[c] + eps * uniform_mass;
    return TupleDistribution(arity_, alphabet_, std::move(mixed));
}

Rational TupleDistribution::prob_of(const std::vector<int>& tuple) const {
    if (static_cast<int>(tuple.size()) != arity_) throw DimensionError("tuple arity mismatch");
    std::size_t code = 0;
    std::size_t place = 1;
    for (int digit : tuple) {
        if (digit < 0 || digit >= alphabet_) throw InvalidParameterError("tuple entry outside alphabet");
        code += static_cast<std::size_t>(digit) * place;
        place *= static_cast<std::size_t>(alphabet_);
    }
    return table_[code];
}

std::vector<std::size_t> TupleDistribution::support() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < table_.size(); ++c)
        if (table_[c] != 0) out.push_back(c);
    return out;
}

std::vector<int> TupleDistribution::decode(std::size_t tuple_code) const {
    std::vector<int> digits(static_cast<std::size_t>(arity_));
    for (int j = 0; j < arity_; ++j) {
        digits[static_cast<std::size_t>(j)] = static_cast<int>(tuple_code % static_cast<std::size_t>(alphabet_));
        tuple_code /= static_cast<std::size_t>(alphabet_);
    }
    return digits;
}

DistributionReport TupleDistribution::analyze() const {
    DistributionReport report;
    const int m = alphabet_;
    const Rational one_over_m(1, m);
    const Rational one_over_m2(1, BigInt(m) * m);

    // single-coordinate marginals
    std::vector<Rational> marginal(static_cast<std::size_t>(arity_ * m), Rational(0));
    // two-coordinate marginals for ordered pairs i < j
    std::vector<Rational> pair_marginal(
        static_cast<std::size_t>(arity_ * arity_ * m * m), Rational(0));

    report.min_probability = table_[0];
    report.prob_some_zero = 0;

    std::vector<int> digits;
    for (std::size_t c = 0; c < table_.size(); ++c) {
        const Rational& p = table_[c];
        if (p < report.min_probability) report.min_probability = p;
        digits = decode(c);
        bool has_zero = false;
        for (int i = 0; i < arity_; ++i) {
            const int di = digits[static_cast<std::size_t>(i)];
            if (di == 0) has_zero = true;
            marginal[static_cast<std::size_t>(i * m + di)] += p;
            for (int j = i + 1; j < arity_; ++j) {
                const int dj = digits[static_cast<std::size_t>(j)];
                pair_marginal[static_cast<std::size_t>(((i * arity_ + j) * m + di) * m + dj)] += p;
            }
        }
        if (has_zero) report.prob_some_zero += p;
    }

    report.balanced = true;
    for (int i = 0; i < arity_ && report.balanced; ++i)
        for (int v = 0; v < m; ++v)
            if (marginal[static_cast<std::size_t>(i * m + v)] != one_over_m) {
                report.balanced = false;
                break;
            }

    report.pairwise_independent = true;
    for (int i = 0; i < arity_ && report.pairwise_independent; ++i) {
        for (int j = i + 1; j < arity_ && report.pairwise_independent; ++j) {
            for (int v = 0; v < m * m; ++v) {
                if (pair_marginal[static_cast<std::size_t>((i * arity_ + j) * m * m + v)] != one_over_m2) {
                    report.pairwise_independent = false;
                    break;
                }
            }
        }
    }
    return report;
}

TupleDistribution::IntegerWeights TupleDistribution::integer_weights() const {
    BigInt den(1);
    for (const Rational& p : table_)
        den = boost::multiprecision::lcm(den, denominator(p));
    IntegerWeights w;
    w.den = den;
    w.weight.reserve(table_.size());
    for (const Rational& p : table_)
        w.weight.push_back(numerator(p) * (den / denominator(p)));
    return w;
}

nlohmann::json TupleDistribution::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t c : support()) {
        entries.push_back({{"tuple", decode(c)}, {"prob", fraction_string(table_[c])}});
    }
    return nlohmann::json{{"q", alphabet_ - 1}, {"arity", arity_}, {"entries", entries}};
}

}  // namespace alloclab
