#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qhfol {

/// Exact rational, always kept canonical (gcd(num, den) = 1, den > 0).
using Rat = mpq_class;
using BigInt = mpz_class;

/// Parses "p" or "p/q" (optional sign). Throws Error(ParseError) on failure.
Rat parse_rat(std::string_view text);

/// "p" when the denominator is 1, else "p/q".
std::string to_string(const Rat& r);

/// Exact conversion of a finite double.
Rat rat_from_double(double d);

/// Rational square root if r is the square of a rational.
bool rat_sqrt(const Rat& r, Rat& out);

}  // namespace qhfol
