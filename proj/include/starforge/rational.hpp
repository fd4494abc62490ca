#ifndef STARFORGE_RATIONAL_HPP
#define STARFORGE_RATIONAL_HPP

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace starforge
{

using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// p/q in lowest terms. mpq_class(p, q) alone does not reduce, and GMP
/// arithmetic on unreduced operands is undefined.
Rational ratio(long p, long q);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational &q);

/// Exact binary value of a finite double.
Rational rational_from_double(double x);

Rational factorial(unsigned n);

/// n (n-1) ... (n-k+1); zero when k > n.
Rational falling_factorial(unsigned n, unsigned k);

Rational binomial(unsigned n, unsigned k);

} // namespace starforge

#endif
