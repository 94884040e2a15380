#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace alloclab {

// Every probability, valuation and welfare in this project is an exact
// rational. cpp_rational keeps values in lowest terms with a positive
// denominator.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "num/den" or a bare integer (optional leading '-').
// Throws BadConfigError on anything else or a nonpositive denominator.
Rational parse_rational(std::string_view text);

// Canonical "num/den" rendering, e.g. "2/3", "0/1", "-1/2".
std::string fraction_string(const Rational& value);

// Decimal rendering for report columns. Display only; pass/fail decisions
// are made on exact values everywhere in this project.
std::string decimal_string(const Rational& value, int significant_digits = 15);

double as_double(const Rational& value);

// x^n for exact rationals, n >= 0.
Rational rational_pow(const Rational& base, unsigned exponent);

// base^exp as size_t; throws ResourceLimitError on overflow.
std::size_t checked_pow(std::size_t base, unsigned exponent);

}  // namespace alloclab
