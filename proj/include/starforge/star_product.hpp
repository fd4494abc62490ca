#ifndef STARFORGE_STAR_PRODUCT_HPP
#define STARFORGE_STAR_PRODUCT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "starforge/enveloping.hpp"
#include "starforge/graph.hpp"
#include "starforge/lie_algebra.hpp"
#include "starforge/operators.hpp"
#include "starforge/weight.hpp"

namespace starforge
{

/// Truncated star-product f * g = sum_{r <= N} h^r C_r(f, g).
class StarProduct
{
public:
    StarProduct() = default;
    /// cochains[0] must be the multiplication; `estimated` defaults to all false.
    StarProduct(std::vector<BiDiffOperator> cochains, std::vector<bool> estimated = {},
                std::optional<PoissonTensor> pi = std::nullopt);

    std::size_t dim() const noexcept { return dim_; }
    unsigned order() const noexcept { return static_cast<unsigned>(cochains_.size()) - 1; }
    const BiDiffOperator &cochain(unsigned r) const { return cochains_.at(r); }
    const std::vector<BiDiffOperator> &cochains() const noexcept { return cochains_; }
    bool estimated(unsigned r) const { return estimated_.at(r); }
    /// True when no order uses an estimated weight.
    bool exact() const;
    const std::optional<PoissonTensor> &poisson() const noexcept { return pi_; }

    HSeries multiply(const Polynomial &f, const Polynomial &g) const;
    /// Bilinear extension, truncated at min(order(), f.order(), g.order()).
    HSeries multiply(const HSeries &f, const HSeries &g) const;

    nlohmann::json to_json() const;

private:
    std::size_t dim_ = 0;
    std::vector<BiDiffOperator> cochains_;
    std::vector<bool> estimated_;
    std::optional<PoissonTensor> pi_;
};

/// Canonical classes of G_n sorted by representative encoding.
std::vector<GraphClass> graph_classes(unsigned n, unsigned cap = 4);

/// C_r = sum over contributing classes of symmetry_count * w * B_rep.
/// Bad classes and classes with odd automorphisms are skipped. Missing
/// weights of decomposable classes fall back to factorized_weight.
/// include_wheels = false drops classes with a cycle among internal vertices.
StarProduct assemble_kontsevich(const PoissonTensor &pi, unsigned order, const WeightTable &table,
                                bool include_wheels = true);

/// Gutt cochains C_r, r <= order, recovered from exact products of monomials.
StarProduct gutt_star_product(const EnvelopingAlgebra &u, unsigned order);
StarProduct gutt_star_product(const LieAlgebra &g, unsigned order);

HSeries star_multiply(const StarProduct &s, const Polynomial &f, const Polynomial &g);

/// (f*g)*h - f*(g*h)
HSeries associator_defect(const StarProduct &s, const Polynomial &f, const Polynomial &g, const Polynomial &h);

/// X*Y - Y*X - 2h Pi(X, Y) for basis pairs; returns the first nonzero defect
/// (or zero). Throws InvalidArgument unless the product carries a linear Pi.
HSeries covariance_defect(const StarProduct &s);

/// X^{*k} - X^k for k = 0..kmax.
std::vector<HSeries> weyl_defect(const StarProduct &s, const Polynomial &x, unsigned kmax);

/// eta = -sum_{i,J} phi^{i,J} d_{iJ} / (1 + |J|). Requires at most first
/// derivatives in the first slot and no terms acting on constants.
DiffOperator eta_from_bidiff(const BiDiffOperator &phi);

/// rho = id + sum h^r rho_r.
class EquivalenceOperator
{
public:
    struct ExponentTerm
    {
        unsigned r;
        Rational coefficient;
        DiffOperator op;
        bool estimated;
    };

    EquivalenceOperator() = default;
    EquivalenceOperator(std::vector<DiffOperator> terms, std::vector<bool> estimated = {},
                        std::vector<ExponentTerm> exponent = {});

    static EquivalenceOperator identity(std::size_t dim, unsigned order);
    /// exp(sum_r h^r coefficient_r op_r) for commuting constant-coefficient ops.
    static EquivalenceOperator exponential(std::size_t dim, unsigned order, std::vector<ExponentTerm> exponent);

    std::size_t dim() const noexcept { return dim_; }
    unsigned order() const noexcept { return static_cast<unsigned>(terms_.size()) - 1; }
    const DiffOperator &term(unsigned r) const { return terms_.at(r); }
    const std::vector<DiffOperator> &terms() const noexcept { return terms_; }
    bool estimated(unsigned r) const { return estimated_.at(r); }
    const std::vector<ExponentTerm> &exponent() const noexcept { return exponent_; }
    bool is_identity() const;

    HSeries apply(const Polynomial &f) const;
    HSeries apply(const HSeries &f) const;
    EquivalenceOperator inverse() const;

    friend bool operator==(const EquivalenceOperator &a, const EquivalenceOperator &b) { return a.terms_ == b.terms_; }

private:
    std::size_t dim_ = 0;
    std::vector<DiffOperator> terms_;
    std::vector<bool> estimated_;
    std::vector<ExponentTerm> exponent_;
};

/// Raised when a cochain leaves the form the normalization needs.
class NormalizationError : public Error
{
public:
    NormalizationError(unsigned order, const std::string &what)
        : Error("order " + std::to_string(order) + ": " + what), order(order)
    {
    }
    unsigned order;
};

/// rho with rho(X^k) = X^{*k}: phi_r = C_r + sum_{a+b=r} C_a(., rho_b .)
/// restricted to first-slot order <= 1, then rho_r = -eta(phi_r).
EquivalenceOperator weyl_normalize(const StarProduct &s);

/// exp(sum_{r>=2} h^r 2^r (r-1)! w(wheel1(r)) D_r). Orders with D_r = 0 need
/// no weight.
EquivalenceOperator kontsevich_gutt_rho(const LieAlgebra &g, unsigned order, const WeightTable &table);

struct EquivalenceReport
{
    unsigned order = 0;
    unsigned trials = 0;
    std::uint64_t seed = 0;
    /// Largest |coefficient| of rho(f *G g) - rho(f) *K rho(g), per h-order.
    std::vector<Rational> max_defect;
    unsigned failing_trials = 0;
    /// weyl_normalize(Kontsevich) equals the closed form term by term.
    bool rho_match = false;
    bool rho_identity = false;
    bool exact = true;
    std::vector<std::string> notes;

    bool ok() const { return failing_trials == 0 && rho_match; }
};

EquivalenceReport verify_equivalence(const LieAlgebra &g, unsigned order, const WeightTable &table, unsigned trials,
                                     std::uint64_t seed = 1, unsigned degree = 4);

} // namespace starforge

#endif
