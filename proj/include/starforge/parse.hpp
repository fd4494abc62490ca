#ifndef STARFORGE_PARSE_HPP
#define STARFORGE_PARSE_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "starforge/polynomial.hpp"

namespace starforge
{

/// Parses polynomial text over x1..xd.
///
/// Grammar: rational literals p or p/q, variables x1..xd, binary + - *,
/// unary -, nonnegative integer powers via ^, and parentheses. Implicit
/// multiplication ("2x1", "x1 x2") is rejected. Errors carry the byte
/// offset of the offending token.
Polynomial parse_poly(std::string_view text, std::size_t dim);

/// Canonical text: graded-lex descending terms, "c*x1^a*x2^b" with the
/// coefficient dropped when it is 1; "0" for the zero polynomial.
std::string to_string(const Polynomial &p);

/// Terms ordered by power of h, e.g. "x1*x2 + h*x3" or "x1^2 + 1/3*h^2".
std::string to_string(const HSeries &s);

} // namespace starforge

#endif
