#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace operadix {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_decimal(const Integer& z);
std::string to_string(const Rational& q);  // "p" or "p/q"

/// Parses an optionally signed decimal integer; throws ParseError.
Integer parse_integer(std::string_view text);
/// Parses "p" or "p/q" and canonicalizes; throws ParseError.
Rational parse_rational(std::string_view text);

std::size_t bit_size(const Integer& z);

inline int sign(const Integer& z) { return sgn(z); }
inline int sign(const Rational& q) { return sgn(q); }

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

}  // namespace operadix
