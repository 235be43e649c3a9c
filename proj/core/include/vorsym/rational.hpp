#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace vorsym {

// All scalar arithmetic in the library is exact.  GMP-backed integers and
// canonical rationals (lowest terms, positive denominator) are the only
// number types; no floating point appears anywhere in the core.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Renders "num/den", with "/den" omitted when den == 1.  This is the wire
/// format for every rational in JSON output.
std::string rat_to_string(const Rat& q);

/// Parses the format produced by rat_to_string.  Throws InvalidParameter on
/// malformed input (including zero denominators).
Rat rat_from_string(std::string_view s);

inline Int num(const Rat& q) { return numerator(q); }
inline Int den(const Rat& q) { return denominator(q); }

/// floor(q) as an exact integer.
Int rat_floor(const Rat& q);

/// Largest integer t with t*t <= n.  Requires n >= 0.
Int isqrt(const Int& n);

}  // namespace vorsym
