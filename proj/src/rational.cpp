#include "alloclab/rational.hpp"

#include "alloclab/errors.hpp"

#include <cctype>
#include <cstdio>
#include <limits>

namespace alloclab {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

BigInt parse_integer(std::string_view s) {
    s = trim(s);
    if (s.empty()) throw BadConfigError("empty integer in rational literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw BadConfigError("sign without digits in rational literal");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw BadConfigError("bad digit in rational literal: '" + std::string(s) + "'");
    }
    return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw BadConfigError("empty rational literal");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    BigInt num = parse_integer(s.substr(0, slash));
    BigInt den = parse_integer(s.substr(slash + 1));
    if (den <= 0) throw BadConfigError("rational denominator must be positive: '" + std::string(s) + "'");
    return Rational(num, den);
}

std::string fraction_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

std::string decimal_string(const Rational& value, int significant_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, as_double(value));
    return buf;
}

double as_double(const Rational& value) {
    return value.convert_to<double>();
}

Rational rational_pow(const Rational& base, unsigned exponent) {
    Rational acc(1);
    Rational b = base;
    unsigned e = exponent;
    while (e > 0) {
        if (e & 1u) acc *= b;
        b *= b;
        e >>= 1u;
    }
    return acc;
}

std::size_t checked_pow(std::size_t base, unsigned exponent) {
    std::size_t acc = 1;
    for (unsigned i = 0; i < exponent; ++i) {
        if (base != 0 && acc > std::numeric_limits<std::size_t>::max() / base)
            throw ResourceLimitError("table size overflow");
        acc *= base;
    }
    return acc;
}

}  // namespace alloclab
