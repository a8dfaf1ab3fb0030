#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <vector>

namespace conepave {

// All arithmetic in the library is exact. Rationals are canonical
// (lowest terms, positive denominator); GMP keeps them that way.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

/// Parses "3/7", "-2", "0.25". Decimal strings are converted exactly
/// via powers of ten, never through binary floating point.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Formats as "p/q", or "p" when the denominator is one.
/// parse_rational(format_rational(q)) == q for every rational.
std::string format_rational(const Rational& q);

}  // namespace conepave
