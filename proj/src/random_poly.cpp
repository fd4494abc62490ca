#include "starforge/random_poly.hpp"

#include <array>

namespace starforge
{

namespace
{

const std::array<Rational, 8> &pool()
{
    static const std::array<Rational, 8> p{Rational(1), Rational(-1), Rational(2), Rational(-3),
                                           Rational(1, 2), Rational(-2, 3), Rational(3, 4), Rational(5, 7)};
    return p;
}

} // namespace

Rational RandomPolynomials::coefficient()
{
    std::uniform_int_distribution<std::size_t> pick(0, pool().size() - 1);
    return pool()[pick(rng_)];
}

MultiIndex RandomPolynomials::exponent(std::size_t dim, unsigned degree)
{
    std::uniform_int_distribution<std::size_t> var(0, dim - 1);
    MultiIndex m(dim);
    for (unsigned k = 0; k < degree; ++k)
        ++m[var(rng_)];
    return m;
}

Polynomial RandomPolynomials::linear(std::size_t dim)
{
    std::bernoulli_distribution keep(0.7);
    Polynomial p(dim);
    while (p.is_zero())
        for (std::size_t i = 0; i < dim; ++i)
            if (keep(rng_))
                p.add_term(MultiIndex::unit(dim, i), coefficient());
    return p;
}

Polynomial RandomPolynomials::polynomial(std::size_t dim, unsigned max_degree, unsigned max_terms)
{
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    std::uniform_int_distribution<unsigned> terms(1, max_terms);
    Polynomial p(dim);
    while (p.is_zero())
    {
        const unsigned t = terms(rng_);
        for (unsigned k = 0; k < t; ++k)
            p.add_term(exponent(dim, deg(rng_)), coefficient());
    }
    return p;
}

Polynomial RandomPolynomials::monomial(std::size_t dim, unsigned max_degree)
{
    std::uniform_int_distribution<unsigned> deg(0, max_degree);
    return Polynomial::monomial(exponent(dim, deg(rng_)));
}

} // namespace starforge
