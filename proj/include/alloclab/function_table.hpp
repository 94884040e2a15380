#pragma once

#include "alloclab/point.hpp"
#include "alloclab/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <vector>

namespace alloclab {

// A function {0,...,q}^R -> [0,1] stored pointwise, indexed by point code.
class FunctionTable {
public:
    FunctionTable(int R, int q, std::vector<Rational> values);

    static FunctionTable constant(int R, int q, const Rational& value);

    // 1{x_i > 0} for the 1-based coordinate i. Mean q/(q+1).
    static FunctionTable dictator(int R, int i, int q);

    // {0,1}-valued with ones exactly at the given codes.
    static FunctionTable indicator(int R, int q, const std::vector<PointCode>& ones);

    // {0,1}-valued with exactly mean*(q+1)^R ones placed uniformly at random.
    // Throws InvalidParameterError when that count is not an integer.
    static FunctionTable random_mean_indicator(int R, int q, const Rational& mean, std::uint64_t seed);

    int coordinates() const { return R_; }
    int q() const { return alphabet_ - 1; }
    int alphabet() const { return alphabet_; }
    std::size_t table_size() const { return values_.size(); }
    const Rational& value(PointCode code) const { return values_.at(code); }
    const std::vector<Rational>& values() const { return values_; }

    // Expectation under the uniform distribution on the domain.
    Rational mean() const;
    bool is_boolean() const;

    // g with g(x) = f(x o pi).
    FunctionTable compose(const Permutation& pi) const;

    // Values as integers over a common denominator: num[c]/den == value(c).
    struct ScaledValues {
        BigInt den;
        std::vector<BigInt> num;
    };
    ScaledValues scaled_values() const;

    nlohmann::json to_json() const;
    static FunctionTable from_json(const nlohmann::json& j);

    bool operator==(const FunctionTable& other) const = default;

private:
    int R_;
    int alphabet_;
    std::vector<Rational> values_;
};

}  // namespace alloclab
