#ifndef STARFORGE_TEST_HELPERS_HPP
#define STARFORGE_TEST_HELPERS_HPP

#include <string>

#include "starforge/lie_algebra.hpp"
#include "starforge/parse.hpp"
#include "starforge/polynomial.hpp"

namespace starforge::test
{

inline Polynomial P(const std::string &text, std::size_t dim) { return parse_poly(text, dim); }

inline Polynomial var(std::size_t dim, std::size_t i) { return Polynomial::variable(dim, i); }

inline MultiIndex units(std::size_t dim, std::initializer_list<std::size_t> idx)
{
    MultiIndex m(dim);
    for (auto i : idx)
        m[i] += 1;
    return m;
}

/// Second order Kontsevich cochain written out with explicit index sums:
/// 1/2 pi^ij pi^kl d_ik f d_jl g
/// + 1/3 pi^ij d_j pi^kl (d_ik f d_l g - d_k f d_il g)
/// - 1/6 d_l pi^ij d_j pi^kl d_i f d_k g
inline Polynomial c2_formula(const PoissonTensor &pi, const Polynomial &f, const Polynomial &g)
{
    const std::size_t d = pi.dim();
    Polynomial sum(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
        {
            if (pi(i, j).is_zero())
                continue;
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                {
                    const Polynomial &pkl = pi(k, l);
                    if (pkl.is_zero())
                        continue;
                    sum += Rational(1, 2) * pi(i, j) * pkl * f.derivative(units(d, {i, k})) *
                           g.derivative(units(d, {j, l}));
                    const Polynomial djpkl = pkl.derivative(j);
                    sum += Rational(1, 3) * pi(i, j) * djpkl *
                           (f.derivative(units(d, {i, k})) * g.derivative(l) -
                            f.derivative(k) * g.derivative(units(d, {i, l})));
                    sum -= Rational(1, 6) * pi(i, j).derivative(l) * djpkl * f.derivative(i) * g.derivative(k);
                }
        }
    return sum;
}

} // namespace starforge::test

#endif
