// =============================================================================
// rational.hpp — Exact rational scalars for the recurrence backends.
//
// Thin layer over GMP's mpq_class: construction helpers that canonicalize,
// rendering as "p/q" strings, and a bit-size probe used by the watchdog that
// aborts exact iterations whose operands outgrow a configured budget.
// =============================================================================
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace moran {

using Rational = mpq_class;

/// num/den as a canonical rational (den > 0, gcd reduced).
Rational make_rational(long long num, long long den = 1);

/// Closest double (GMP rounding).
double to_double(const Rational& q);

/// "p/q", or just "p" when the denominator is 1.
std::string fraction_string(const Rational& q);

/// Bits in numerator plus denominator; the watchdog metric.
std::size_t bit_size(const Rational& q);

/// Thrown when an exact computation exceeds its configured resource budget.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace moran
