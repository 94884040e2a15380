#pragma once

#include "alloclab/rational.hpp"

namespace alloclab::constants {

// Every hard-coded bound lives here so there is a single audit point.

// Soundness ceiling of the dictator test over alphabet q+1:
// 1 - (q/(q+1))^{q+2}. Evaluates to 7/8 for q=1, 65/81 for q=2.
inline Rational soundness_limit(int q) {
    return Rational(1) - rational_pow(Rational(q, q + 1), static_cast<unsigned>(q + 2));
}

// Large-good value scale in the assignment-problem variant.
inline Rational gap_c() { return Rational(32, 27); }

// Utilitarian welfare endpoints of the assignment-problem gap:
// YES side 145/81 - eps, NO side 129/81 + 5 eps.
inline Rational gap_yes_base() { return Rational(145, 81); }
inline Rational gap_no_base() { return Rational(129, 81); }

// Minimum of x^4 - (32/27) x over [0,1], attained at x = 2/3.
inline Rational gap_poly_min() { return Rational(-48, 81); }
inline Rational gap_poly_argmin() { return Rational(2, 3); }

// Budgeted-welfare endpoints: YES side 3(1 - eps), NO side 227/81 + eps.
inline Rational budget_no_base() { return Rational(227, 81); }

// Final ratio bounds: cube of the Nash ratio, and the two plain ratios.
inline Rational nash_ratio_cubed() { return Rational(81, 65); }
inline Rational budget_ratio() { return Rational(243, 227); }
inline Rational gap_ratio() { return Rational(145, 129); }

}  // namespace alloclab::constants
