#include "starforge/polynomial.hpp"

#include <algorithm>
#include <numeric>

#include "starforge/errors.hpp"

namespace starforge
{

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t i)
{
    MultiIndex m(dim);
    m.e_.at(i) = 1;
    return m;
}

MultiIndex MultiIndex::from_letters(std::size_t dim, std::span<const unsigned> letters)
{
    MultiIndex m(dim);
    for (unsigned l : letters)
        ++m.e_.at(l);
    return m;
}

unsigned MultiIndex::degree() const noexcept
{
    return std::accumulate(e_.begin(), e_.end(), 0u);
}

bool MultiIndex::is_zero() const noexcept
{
    return std::all_of(e_.begin(), e_.end(), [](value_type v) { return v == 0; });
}

bool MultiIndex::divides(const MultiIndex &other) const
{
    if (dim() != other.dim())
        throw DimensionMismatch(dim(), other.dim());
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > other.e_[i])
            return false;
    return true;
}

std::vector<unsigned> MultiIndex::letters() const
{
    std::vector<unsigned> out;
    for (std::size_t i = 0; i < e_.size(); ++i)
        out.insert(out.end(), e_[i], static_cast<unsigned>(i));
    return out;
}

MultiIndex &MultiIndex::operator+=(const MultiIndex &other)
{
    if (dim() != other.dim())
        throw DimensionMismatch(dim(), other.dim());
    for (std::size_t i = 0; i < e_.size(); ++i)
        e_[i] = static_cast<value_type>(e_[i] + other.e_[i]);
    return *this;
}

MultiIndex MultiIndex::operator-(const MultiIndex &other) const
{
    if (!other.divides(*this))
        throw InvalidArgument("multi-index subtraction would go negative");
    MultiIndex r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i)
        r.e_[i] = static_cast<value_type>(r.e_[i] - other.e_[i]);
    return r;
}

std::strong_ordering operator<=>(const MultiIndex &a, const MultiIndex &b)
{
    if (auto c = a.degree() <=> b.degree(); c != 0)
        return c;
    return a.e_ <=> b.e_;
}

Rational factorial(const MultiIndex &a)
{
    Rational f = 1;
    for (auto v : a.exponents())
        f *= factorial(v);
    return f;
}

Rational binomial(const MultiIndex &k, const MultiIndex &s)
{
    Rational b = 1;
    for (std::size_t i = 0; i < k.dim(); ++i)
        b *= binomial(k[i], s[i]);
    return b;
}

Rational falling_factorial(const MultiIndex &a, const MultiIndex &j)
{
    Rational f = 1;
    for (std::size_t i = 0; i < a.dim(); ++i)
        f *= falling_factorial(a[i], j[i]);
    return f;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(std::size_t dim, const Rational &c)
{
    Polynomial p(dim);
    p.add_term(MultiIndex(dim), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t dim, std::size_t i)
{
    if (i >= dim)
        throw InvalidArgument("variable index out of range");
    return monomial(MultiIndex::unit(dim, i));
}

Polynomial Polynomial::monomial(const MultiIndex &m, const Rational &c)
{
    Polynomial p(m.dim());
    p.add_term(m, c);
    return p;
}

Polynomial Polynomial::linear(std::span<const Rational> coeffs)
{
    Polynomial p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        p.add_term(MultiIndex::unit(coeffs.size(), i), coeffs[i]);
    return p;
}

int Polynomial::degree() const
{
    if (terms_.empty())
        return -1;
    return static_cast<int>(terms_.rbegin()->first.degree());
}

bool Polynomial::is_homogeneous(unsigned k) const
{
    return std::all_of(terms_.begin(), terms_.end(), [k](const auto &t) { return t.first.degree() == k; });
}

Rational Polynomial::coefficient(const MultiIndex &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::homogeneous_component(unsigned k) const
{
    Polynomial p(dim_);
    for (const auto &[m, c] : terms_)
        if (m.degree() == k)
            p.terms_.emplace_hint(p.terms_.end(), m, c);
    return p;
}

std::vector<Rational> Polynomial::linear_coefficients() const
{
    if (!is_homogeneous(1))
        throw InvalidArgument("expected a homogeneous linear form");
    std::vector<Rational> a(dim_);
    for (const auto &[m, c] : terms_)
        for (std::size_t i = 0; i < dim_; ++i)
            if (m[i] == 1)
                a[i] = c;
    return a;
}

void Polynomial::add_term(const MultiIndex &m, const Rational &c)
{
    if (m.dim() != dim_)
        throw DimensionMismatch(dim_, m.dim());
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted)
    {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

Polynomial &Polynomial::operator+=(const Polynomial &other)
{
    if (other.dim_ != dim_)
        throw DimensionMismatch(dim_, other.dim_);
    for (const auto &[m, c] : other.terms_)
        add_term(m, c);
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &other)
{
    if (other.dim_ != dim_)
        throw DimensionMismatch(dim_, other.dim_);
    for (const auto &[m, c] : other.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial &Polynomial::operator*=(const Rational &c)
{
    if (sgn(c) == 0)
    {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_)
        t.second *= c;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial p(*this);
    for (auto &t : p.terms_)
        t.second = -t.second;
    return p;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
    if (a.dim_ != b.dim_)
        throw DimensionMismatch(a.dim_, b.dim_);
    Polynomial p(a.dim_);
    Rational prod;
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_)
        {
            prod = ca * cb;
            p.add_term(ma + mb, prod);
        }
    return p;
}

Polynomial Polynomial::pow(int exponent) const
{
    if (exponent < 0)
        throw InvalidArgument("negative exponent");
    Polynomial result = constant(dim_, 1);
    Polynomial base = *this;
    unsigned e = static_cast<unsigned>(exponent);
    while (e)
    {
        if (e & 1u)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t i) const
{
    if (i >= dim_)
        throw InvalidArgument("derivative index out of range");
    return derivative(MultiIndex::unit(dim_, i));
}

Polynomial Polynomial::derivative(const MultiIndex &j) const
{
    if (j.dim() != dim_)
        throw DimensionMismatch(dim_, j.dim());
    Polynomial p(dim_);
    for (const auto &[m, c] : terms_)
    {
        if (!j.divides(m))
            continue;
        p.add_term(m - j, c * falling_factorial(m, j));
    }
    return p;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const
{
    if (point.size() != dim_)
        throw DimensionMismatch(dim_, point.size());
    Rational total = 0;
    for (const auto &[m, c] : terms_)
    {
        Rational t = c;
        for (std::size_t i = 0; i < dim_; ++i)
            for (unsigned e = 0; e < m[i]; ++e)
                t *= point[i];
        total += t;
    }
    return total;
}

// ---------------------------------------------------------------------------

HSeries::HSeries(std::size_t dim, unsigned order) : dim_(dim), c_(order + 1, Polynomial(dim)) {}

HSeries::HSeries(const Polynomial &p, unsigned order) : HSeries(p.dim(), order)
{
    c_[0] = p;
}

bool HSeries::is_zero() const
{
    return std::all_of(c_.begin(), c_.end(), [](const Polynomial &p) { return p.is_zero(); });
}

HSeries HSeries::truncated(unsigned order) const
{
    HSeries s(dim_, order);
    for (unsigned r = 0; r <= std::min(order, this->order()); ++r)
        s.c_[r] = c_[r];
    return s;
}

HSeries HSeries::extended(unsigned order) const
{
    HSeries s = *this;
    if (order > this->order())
        s.c_.resize(order + 1, Polynomial(dim_));
    return s;
}

HSeries &HSeries::operator+=(const HSeries &other)
{
    if (other.dim_ != dim_)
        throw DimensionMismatch(dim_, other.dim_);
    if (other.order() < order())
        c_.resize(other.order() + 1);
    for (unsigned r = 0; r <= order(); ++r)
        c_[r] += other.c_[r];
    return *this;
}

HSeries &HSeries::operator-=(const HSeries &other)
{
    if (other.dim_ != dim_)
        throw DimensionMismatch(dim_, other.dim_);
    if (other.order() < order())
        c_.resize(other.order() + 1);
    for (unsigned r = 0; r <= order(); ++r)
        c_[r] -= other.c_[r];
    return *this;
}

HSeries &HSeries::operator*=(const Rational &c)
{
    for (auto &p : c_)
        p *= c;
    return *this;
}

HSeries operator*(const HSeries &a, const HSeries &b)
{
    if (a.dim_ != b.dim_)
        throw DimensionMismatch(a.dim_, b.dim_);
    const unsigned n = std::min(a.order(), b.order());
    HSeries s(a.dim_, n);
    for (unsigned i = 0; i <= n; ++i)
        for (unsigned j = 0; i + j <= n; ++j)
            s.c_[i + j] += a.c_[i] * b.c_[j];
    return s;
}

} // namespace starforge
