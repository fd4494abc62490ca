#ifndef STARFORGE_POLYNOMIAL_HPP
#define STARFORGE_POLYNOMIAL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include "starforge/rational.hpp"

namespace starforge
{

/// Exponent vector of a monomial x^a, also used as an unordered
/// derivative multi-index (partials commute, so a multiset of
/// coordinate indices is a count per coordinate).
///
/// Ordering is graded-lex: total degree first, then the exponent of
/// x1, then x2, ... so that x1 > x2 > ... within a degree.
class MultiIndex
{
public:
    using value_type = std::uint16_t;

    MultiIndex() = default;
    explicit MultiIndex(std::size_t dim) : e_(dim, 0) {}
    MultiIndex(std::initializer_list<value_type> e) : e_(e) {}
    explicit MultiIndex(std::vector<value_type> e) : e_(std::move(e)) {}

    static MultiIndex unit(std::size_t dim, std::size_t i);
    /// Multiset of 0-based coordinate indices, e.g. {0,0,2} -> (2,0,1).
    static MultiIndex from_letters(std::size_t dim, std::span<const unsigned> letters);

    std::size_t dim() const noexcept { return e_.size(); }
    value_type operator[](std::size_t i) const { return e_[i]; }
    value_type &operator[](std::size_t i) { return e_[i]; }
    std::span<const value_type> exponents() const noexcept { return e_; }

    unsigned degree() const noexcept;
    bool is_zero() const noexcept;
    /// Componentwise <=.
    bool divides(const MultiIndex &other) const;
    /// Expanded multiset, nondecreasing.
    std::vector<unsigned> letters() const;

    MultiIndex &operator+=(const MultiIndex &other);
    friend MultiIndex operator+(MultiIndex a, const MultiIndex &b) { return a += b; }
    /// Requires other.divides(*this).
    MultiIndex operator-(const MultiIndex &other) const;

    friend bool operator==(const MultiIndex &, const MultiIndex &) = default;
    friend std::strong_ordering operator<=>(const MultiIndex &a, const MultiIndex &b);

private:
    std::vector<value_type> e_;
};

/// prod_i a_i!
Rational factorial(const MultiIndex &a);
/// prod_i C(k_i, s_i)
Rational binomial(const MultiIndex &k, const MultiIndex &s);
/// prod_i a_i! / (a_i - j_i)!, zero unless j divides a.
Rational falling_factorial(const MultiIndex &a, const MultiIndex &j);

/// Calls fn(sub) for every sub-multi-index sub <= k (componentwise).
template <typename Fn> void for_each_sub_index(const MultiIndex &k, Fn &&fn)
{
    MultiIndex s(k.dim());
    while (true)
    {
        fn(static_cast<const MultiIndex &>(s));
        std::size_t i = 0;
        for (; i < k.dim(); ++i)
        {
            if (s[i] < k[i])
            {
                ++s[i];
                break;
            }
            s[i] = 0;
        }
        if (i == k.dim())
            return;
    }
}

/// Exact multivariate polynomial in x^1..x^d with rational coefficients.
/// Stored sparsely; zero coefficients are never kept.
class Polynomial
{
public:
    using Terms = std::map<MultiIndex, Rational>;

    explicit Polynomial(std::size_t dim = 0) : dim_(dim) {}

    static Polynomial constant(std::size_t dim, const Rational &c);
    /// The coordinate x^{i+1} (0-based i).
    static Polynomial variable(std::size_t dim, std::size_t i);
    static Polynomial monomial(const MultiIndex &m, const Rational &c = 1);
    /// sum_i coeffs[i] x^{i+1}
    static Polynomial linear(std::span<const Rational> coeffs);

    std::size_t dim() const noexcept { return dim_; }
    const Terms &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Total degree; -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous(unsigned k) const;
    Rational coefficient(const MultiIndex &m) const;
    Polynomial homogeneous_component(unsigned k) const;
    /// Coefficients of a homogeneous linear form; throws otherwise.
    std::vector<Rational> linear_coefficients() const;

    void add_term(const MultiIndex &m, const Rational &c);

    Polynomial &operator+=(const Polynomial &other);
    Polynomial &operator-=(const Polynomial &other);
    Polynomial &operator*=(const Rational &c);
    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational &c) { return a *= c; }
    friend Polynomial operator*(const Rational &c, Polynomial a) { return a *= c; }
    Polynomial operator-() const;
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b);

    Polynomial pow(int exponent) const;
    /// Partial derivative with respect to x^{i+1}.
    Polynomial derivative(std::size_t i) const;
    /// Iterated partial derivative d_J.
    Polynomial derivative(const MultiIndex &j) const;
    Rational evaluate(std::span<const Rational> point) const;

    friend bool operator==(const Polynomial &, const Polynomial &) = default;

private:
    std::size_t dim_;
    Terms terms_;
};

/// Truncated formal series sum_{r <= N} h^r P_r with polynomial coefficients.
/// Arithmetic between series of different orders truncates to the smaller one.
class HSeries
{
public:
    HSeries() = default;
    HSeries(std::size_t dim, unsigned order);
    /// P placed at h^0.
    HSeries(const Polynomial &p, unsigned order);

    std::size_t dim() const noexcept { return dim_; }
    unsigned order() const noexcept { return static_cast<unsigned>(c_.size()) - 1; }
    const Polynomial &operator[](unsigned r) const { return c_.at(r); }
    Polynomial &operator[](unsigned r) { return c_.at(r); }
    const std::vector<Polynomial> &coefficients() const noexcept { return c_; }
    bool is_zero() const;

    HSeries truncated(unsigned order) const;
    /// Same series with zero coefficients appended up to `order`. Only
    /// meaningful when the series is known to be exact (terminating).
    HSeries extended(unsigned order) const;

    HSeries &operator+=(const HSeries &other);
    HSeries &operator-=(const HSeries &other);
    HSeries &operator*=(const Rational &c);
    friend HSeries operator+(HSeries a, const HSeries &b) { return a += b; }
    friend HSeries operator-(HSeries a, const HSeries &b) { return a -= b; }
    friend HSeries operator*(HSeries a, const Rational &c) { return a *= c; }
    /// Undeformed (pointwise) product.
    friend HSeries operator*(const HSeries &a, const HSeries &b);

    friend bool operator==(const HSeries &, const HSeries &) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Polynomial> c_{Polynomial()};
};

} // namespace starforge

#endif
