#ifndef STARFORGE_RANDOM_POLY_HPP
#define STARFORGE_RANDOM_POLY_HPP

#include <cstddef>
#include <random>

#include "starforge/polynomial.hpp"

namespace starforge
{

/// Draws coefficients from a small fixed pool of nonzero rationals.
class RandomPolynomials
{
public:
    explicit RandomPolynomials(std::uint64_t seed) : rng_(seed) {}

    Rational coefficient();
    /// Nonzero linear form.
    Polynomial linear(std::size_t dim);
    /// Up to `max_terms` monomials of degree <= max_degree; never zero.
    Polynomial polynomial(std::size_t dim, unsigned max_degree, unsigned max_terms = 4);
    /// A single monomial of degree <= max_degree with coefficient 1.
    Polynomial monomial(std::size_t dim, unsigned max_degree);

    std::mt19937_64 &engine() noexcept { return rng_; }

private:
    MultiIndex exponent(std::size_t dim, unsigned degree);

    std::mt19937_64 rng_;
};

} // namespace starforge

#endif
