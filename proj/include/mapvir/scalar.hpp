#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace mapvir {

/// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
/// denominator) after every arithmetic operation, but the two-argument
/// constructor does not reduce; build fractions with rational().
using Scalar = mpq_class;

/// num/den in canonical form; den != 0.
Scalar rational(long num, long den);

/// Parses "p" or "p/q" (optional leading sign, q > 0). Throws ValidationError.
Scalar parse_scalar(std::string_view text);

/// Canonical text form: "p" when the denominator is 1, else "p/q".
std::string to_string(const Scalar& s);

inline bool is_zero(const Scalar& s) { return sgn(s) == 0; }

/// Integer power with exponent >= 0.
Scalar pow(const Scalar& base, unsigned long exponent);

}  // namespace mapvir
