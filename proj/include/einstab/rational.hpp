#ifndef EINSTAB_RATIONAL_HPP
#define EINSTAB_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace einstab {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator. Every constructor path in this library canonicalizes.
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" (surrounding whitespace allowed). Throws
// ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

// base^exponent when the result is rational, std::nullopt otherwise.
// base must be positive.
std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent);

// p/q in lowest terms; q must be nonzero.
Rational ratio(long p, long q);

// Integer power with a signed exponent; base must be nonzero when exp < 0.
Rational ipow(const Rational& base, long exp);

double to_double(const Rational& value);

// Best rational approximation with denominator <= max_den (continued
// fractions). Used to snap floating critical points onto exact candidates.
Rational approximate(double value, long max_den);

}  // namespace einstab

#endif
