#ifndef STARFORGE_OPERATORS_HPP
#define STARFORGE_OPERATORS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "starforge/polynomial.hpp"

namespace starforge
{

/// Linear differential operator sum_J a_J(x) d_J with polynomial
/// coefficients. J is an unordered multi-index; the empty J acts as
/// multiplication by a_0.
class DiffOperator
{
public:
    using Terms = std::map<MultiIndex, Polynomial>;

    explicit DiffOperator(std::size_t dim = 0) : dim_(dim) {}

    static DiffOperator identity(std::size_t dim);
    static DiffOperator partial(const MultiIndex &j, const Rational &c = 1);

    std::size_t dim() const noexcept { return dim_; }
    const Terms &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Polynomial coefficient(const MultiIndex &j) const;

    void add_term(const MultiIndex &j, const Polynomial &coeff);

    Polynomial apply(const Polynomial &f) const;
    HSeries apply(const HSeries &f) const;

    /// (*this) o other
    DiffOperator compose(const DiffOperator &other) const;

    DiffOperator &operator+=(const DiffOperator &other);
    DiffOperator &operator-=(const DiffOperator &other);
    DiffOperator &operator*=(const Rational &c);
    friend DiffOperator operator+(DiffOperator a, const DiffOperator &b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator &b) { return a -= b; }
    friend DiffOperator operator*(DiffOperator a, const Rational &c) { return a *= c; }
    friend DiffOperator operator*(const Rational &c, DiffOperator a) { return a *= c; }

    bool is_constant_coefficient() const;
    /// True when every term has derivative order exactly r.
    bool is_homogeneous(unsigned r) const;
    /// For a constant-coefficient operator, the polynomial sum_J a_J y^J on
    /// the dual space (X = sum y_i x^i gives d_J X^k = k!/(k-|J|)! y^J X^{k-|J|}).
    Polynomial symbol() const;

    friend bool operator==(const DiffOperator &, const DiffOperator &) = default;

private:
    std::size_t dim_;
    Terms terms_;
};

/// Bidifferential operator (f, g) -> sum_{I,J} phi^{I,J}(x) d_I f d_J g.
class BiDiffOperator
{
public:
    using Key = std::pair<MultiIndex, MultiIndex>;
    using Terms = std::map<Key, Polynomial>;

    explicit BiDiffOperator(std::size_t dim = 0) : dim_(dim) {}

    /// (f, g) -> f g
    static BiDiffOperator multiplication(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    const Terms &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Polynomial coefficient(const MultiIndex &i, const MultiIndex &j) const;

    void add_term(const MultiIndex &i, const MultiIndex &j, const Polynomial &coeff);

    Polynomial apply(const Polynomial &f, const Polynomial &g) const;

    /// (f, g) -> (*this)(f, D g)
    BiDiffOperator compose_second(const DiffOperator &d) const;
    /// (f, g) -> (*this)(D f, g)
    BiDiffOperator compose_first(const DiffOperator &d) const;
    /// Terms with |I| <= max_first only.
    BiDiffOperator restrict_first_order(unsigned max_first) const;
    /// (f, g) -> (*this)(g, f)
    BiDiffOperator transposed() const;
    /// No (0, J) or (I, 0) terms, i.e. C(1, g) = C(f, 1) = 0.
    bool vanishes_on_constants() const;

    BiDiffOperator &operator+=(const BiDiffOperator &other);
    BiDiffOperator &operator-=(const BiDiffOperator &other);
    BiDiffOperator &operator*=(const Rational &c);
    friend BiDiffOperator operator+(BiDiffOperator a, const BiDiffOperator &b) { return a += b; }
    friend BiDiffOperator operator-(BiDiffOperator a, const BiDiffOperator &b) { return a -= b; }
    friend BiDiffOperator operator*(BiDiffOperator a, const Rational &c) { return a *= c; }
    friend BiDiffOperator operator*(const Rational &c, BiDiffOperator a) { return a *= c; }

    friend bool operator==(const BiDiffOperator &, const BiDiffOperator &) = default;

private:
    std::size_t dim_;
    Terms terms_;
};

/// Operator of a graph union: coefficients multiply, derivative
/// multi-indices add slot by slot.
BiDiffOperator juxtapose(const BiDiffOperator &a, const BiDiffOperator &b);

/// (delta eta)(f, g) = f eta(g) - eta(f g) + eta(f) g
BiDiffOperator hochschild_coboundary(const DiffOperator &eta);

/// e.g. "1/6*d1^2 + 1/6*d2^2"; coefficient polynomials are parenthesized
/// when they have more than one term. The identity prints as "1".
std::string to_string(const DiffOperator &d);
std::string to_string(const BiDiffOperator &b);

} // namespace starforge

#endif
