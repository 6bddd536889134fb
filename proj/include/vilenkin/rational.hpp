#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace vilenkin {

using Integer = mpz_class;
using Rational = mpq_class;

/// base^exponent for any integer exponent (negative exponents give 1/base^|e|).
Rational pow_rational(long base, long exponent);

/// Largest e such that p^e <= value, for value > 0.
long floor_log(const Rational& value, long p);

/// Parses "a", "-a", "a/b" or a plain decimal such as "0.125" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "a/b" in lowest terms, or "a" for integers.
std::string to_fraction_string(const Rational& value);

/// True if the reduced denominator of value is a nonnegative power of p.
bool has_p_power_denominator(const Rational& value, long p);

std::uint64_t ipow(std::uint64_t base, int exponent);

}  // namespace vilenkin
