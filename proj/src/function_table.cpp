#include "alloclab/function_table.hpp"

#include "alloclab/errors.hpp"

#include <boost/multiprecision/integer.hpp>

#include <numeric>
#include <string>

namespace alloclab {

FunctionTable::FunctionTable(int R, int q, std::vector<Rational> values)
    : R_(R), alphabet_(q + 1), values_(std::move(values)) {
    if (R_ < 1) throw DimensionError("function table needs R >= 1");
    if (q < 1) throw InvalidParameterError("function table needs q >= 1");
    const std::size_t expected = checked_pow(static_cast<std::size_t>(alphabet_), static_cast<unsigned>(R_));
    if (values_.size() != expected) throw DimensionError("function table has wrong size");
    for (const Rational& v : values_)
        if (v < 0 || v > 1) throw InvalidParameterError("function values must lie in [0,1]");
}

FunctionTable FunctionTable::constant(int R, int q, const Rational& value) {
    const std::size_t size = checked_pow(static_cast<std::size_t>(q + 1), static_cast<unsigned>(R));
    return FunctionTable(R, q, std::vector<Rational>(size, value));
}

FunctionTable FunctionTable::dictator(int R, int i, int q) {
    if (i < 1 || i > R) throw DimensionError("dictator coordinate out of range");
    const int m = q + 1;
    const std::size_t size = checked_pow(static_cast<std::size_t>(m), static_cast<unsigned>(R));
    const std::size_t stride = checked_pow(static_cast<std::size_t>(m), static_cast<unsigned>(i - 1));
    std::vector<Rational> values(size);
    for (std::size_t c = 0; c < size; ++c)
        values[c] = ((c / stride) % static_cast<std::size_t>(m)) > 0 ? 1 : 0;
    return FunctionTable(R, q, std::move(values));
}

FunctionTable FunctionTable::indicator(int R, int q, const std::vector<PointCode>& ones) {
    const std::size_t size = checked_pow(static_cast<std::size_t>(q + 1), static_cast<unsigned>(R));
    std::vector<Rational> values(size, Rational(0));
    for (PointCode c : ones) values.at(c) = 1;
    return FunctionTable(R, q, std::move(values));
}

FunctionTable FunctionTable::random_mean_indicator(int R, int q, const Rational& mean, std::uint64_t seed) {
    const std::size_t size = checked_pow(static_cast<std::size_t>(q + 1), static_cast<unsigned>(R));
    const Rational count_exact = mean * size;
    if (denominator(count_exact) != 1 || count_exact < 0 || count_exact > size)
        throw InvalidParameterError("mean * (q+1)^R must be an integer in [0, table size]");
    const std::size_t count = numerator(count_exact).convert_to<std::size_t>();
    std::vector<PointCode> codes(size);
    std::iota(codes.begin(), codes.end(), PointCode(0));
    std::mt19937_64 rng(seed);
    // partial Fisher-Yates: the first `count` entries become the ones
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(bounded_draw(rng, size - i));
        std::swap(codes[i], codes[j]);
    }
    codes.resize(count);
    return indicator(R, q, codes);
}

Rational FunctionTable::mean() const {
    Rational sum(0);
    for (const Rational& v : values_) sum += v;
    return sum / Rational(BigInt(values_.size()));
}

bool FunctionTable::is_boolean() const {
    for (const Rational& v : values_)
        if (v != 0 && v != 1) return false;
    return true;
}

FunctionTable FunctionTable::compose(const Permutation& pi) const {
    if (pi.size() != R_) throw DimensionError("permutation size does not match function arity");
    std::vector<Rational> out(values_.size());
    std::vector<int> x(static_cast<std::size_t>(R_), 0);
    std::vector<PointCode> place(static_cast<std::size_t>(R_));
    PointCode pl = 1;
    for (int i = 0; i < R_; ++i) {
        place[static_cast<std::size_t>(i)] = pl;
        pl *= static_cast<PointCode>(alphabet_);
    }
    for (std::size_t c = 0; c < values_.size(); ++c) {
        // digits of c are x; y = x o pi has y_i = x_{pi(i)}
        std::size_t tmp = c;
        for (int i = 0; i < R_; ++i) {
            x[static_cast<std::size_t>(i)] = static_cast<int>(tmp % static_cast<std::size_t>(alphabet_));
            tmp /= static_cast<std::size_t>(alphabet_);
        }
        PointCode y = 0;
        for (int i = 0; i < R_; ++i)
            y += static_cast<PointCode>(x[static_cast<std::size_t>(pi.apply0(i))]) * place[static_cast<std::size_t>(i)];
        out[c] = values_[y];
    }
    return FunctionTable(R_, alphabet_ - 1, std::move(out));
}

FunctionTable::ScaledValues FunctionTable::scaled_values() const {
    BigInt den(1);
    for (const Rational& v : values_)
        den = boost::multiprecision::lcm(den, denominator(v));
    ScaledValues s;
    s.den = den;
    s.num.reserve(values_.size());
    for (const Rational& v : values_)
        s.num.push_back(numerator(v) * (den / denominator(v)));
    return s;
}

nlohmann::json FunctionTable::to_json() const {
    nlohmann::json vals = nlohmann::json::array();
    for (const Rational& v : values_) vals.push_back(fraction_string(v));
    return nlohmann::json{{"R", R_}, {"q", alphabet_ - 1}, {"values", vals}};
}

FunctionTable FunctionTable::from_json(const nlohmann::json& j) {
    if (!j.contains("R") || !j.contains("q") || !j.contains("values"))
        throw BadConfigError("function table JSON needs R, q and values");
    std::vector<Rational> values;
    for (const auto& v : j.at("values")) values.push_back(parse_rational(v.get<std::string>()));
    return FunctionTable(j.at("R").get<int>(), j.at("q").get<int>(), std::move(values));
}

}  // namespace alloclab
