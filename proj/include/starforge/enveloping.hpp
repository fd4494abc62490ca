#ifndef STARFORGE_ENVELOPING_HPP
#define STARFORGE_ENVELOPING_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "starforge/lie_algebra.hpp"
#include "starforge/polynomial.hpp"

namespace starforge
{

/// A word x_{i1} x_{i2} ... in the basis letters, 0-based.
using Word = std::vector<std::uint8_t>;

/// Shorter words first, then lexicographic.
struct WordLess
{
    bool operator()(const Word &a, const Word &b) const
    {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

/// Element of U(g) in the PBW basis: a sparse combination of
/// nondecreasing words.
class UEAElement
{
public:
    using Terms = std::map<Word, Rational, WordLess>;

    explicit UEAElement(std::size_t dim = 0) : dim_(dim) {}
    static UEAElement one(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    const Terms &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Word &w) const;
    /// Length of the longest word; -1 for zero.
    int length() const;

    /// Requires w to be nondecreasing.
    void add_term(const Word &w, const Rational &c);

    UEAElement &operator+=(const UEAElement &other);
    UEAElement &operator-=(const UEAElement &other);
    UEAElement &operator*=(const Rational &c);
    friend UEAElement operator+(UEAElement a, const UEAElement &b) { return a += b; }
    friend UEAElement operator-(UEAElement a, const UEAElement &b) { return a -= b; }
    friend UEAElement operator*(UEAElement a, const Rational &c) { return a *= c; }

    friend bool operator==(const UEAElement &, const UEAElement &) = default;

private:
    std::size_t dim_;
    Terms terms_;
};

/// U(g) with memoized PBW rewriting and symmetrization. The caches are
/// guarded internally so one instance may be shared between threads.
class EnvelopingAlgebra
{
public:
    explicit EnvelopingAlgebra(LieAlgebra g) : g_(std::move(g)) {}
    EnvelopingAlgebra(const EnvelopingAlgebra &) = delete;
    EnvelopingAlgebra &operator=(const EnvelopingAlgebra &) = delete;

    const LieAlgebra &algebra() const noexcept { return g_; }
    std::size_t dim() const noexcept { return g_.dim(); }

    /// Normal-orders an arbitrary word (0-based letters).
    UEAElement normalize(std::span<const unsigned> word) const;
    UEAElement multiply(const UEAElement &a, const UEAElement &b) const;

    UEAElement symmetrize(const Polynomial &p) const;
    /// Inverse of symmetrize, peeling off the longest words first.
    Polynomial unsymmetrize(const UEAElement &u) const;

    /// Exact Gutt product; the series terminates at h^(deg P + deg Q).
    HSeries gutt_product(const Polynomial &p, const Polynomial &q) const;
    /// Bilinear extension to series, truncated at `order`.
    HSeries gutt_product(const HSeries &p, const HSeries &q, unsigned order) const;

private:
    const UEAElement &letter_times_word(unsigned a, const Word &w) const;
    const UEAElement &sigma_monomial(const MultiIndex &m) const;
    UEAElement letter_times(unsigned a, const UEAElement &u) const;
    void add_gutt_homogeneous(const Polynomial &p, const Polynomial &q, HSeries &out) const;

    LieAlgebra g_;
    mutable std::recursive_mutex mutex_;
    mutable std::map<std::pair<unsigned, Word>, UEAElement> ltw_cache_;
    mutable std::map<MultiIndex, UEAElement> sigma_cache_;
};

/// One-shot wrappers; each call builds its own caches.
UEAElement pbw_normalize(std::span<const unsigned> word, const LieAlgebra &g);
UEAElement symmetrize(const Polynomial &p, const LieAlgebra &g);
Polynomial unsymmetrize(const UEAElement &u, const LieAlgebra &g);
HSeries gutt_product(const Polynomial &p, const Polynomial &q, const LieAlgebra &g);

/// B_m with B_1 = -1/2.
Rational bernoulli(unsigned m);

/// c_i(X, Y) for the bracket 2h Pi: the linear form 2^(i-1) c_i^Pi sits at h^(i-1).
struct CHTerm
{
    unsigned order;
    HSeries value;
};

/// c_1 .. c_N. Each value carries truncation order N - 1.
std::vector<CHTerm> ch_series(const Polynomial &x, const Polynomial &y, unsigned n, const LieAlgebra &g);

/// h^r coefficient of exp(-(X+Y)) (exp X *G exp Y), summed over partitions
/// of r: 2^r sum prod_j c_{m_j+1}(X,Y)^{n_j} / n_j! with Pi-bracket c's.
Polynomial gutt_cochain(unsigned r, const Polynomial &x, const Polynomial &y, const LieAlgebra &g);

/// (-1)^r 2^r B_r / r! sum Pi^{i1 j1} d_{i1}Pi^{i2 j2} ... d_{i_r}X d_{j1..jr} f
Polynomial gutt_linear_cochain(unsigned r, const Polynomial &x, const Polynomial &f, const LieAlgebra &g);

} // namespace starforge

#endif
