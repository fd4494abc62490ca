#ifndef STARFORGE_LIE_ALGEBRA_HPP
#define STARFORGE_LIE_ALGEBRA_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "starforge/errors.hpp"
#include "starforge/operators.hpp"
#include "starforge/polynomial.hpp"

namespace starforge
{

/// Raw rank-3 array C_ij^k (0-based storage), not yet validated.
class StructureConstants
{
public:
    explicit StructureConstants(std::size_t dim = 0) : dim_(dim), c_(dim * dim * dim) {}
    /// Requires a cubical d x d x d nested array.
    static StructureConstants from_nested(const std::vector<std::vector<std::vector<Rational>>> &c);

    std::size_t dim() const noexcept { return dim_; }
    const Rational &operator()(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
    Rational &operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
    /// Sets C_ij^k and C_ji^k = -C_ij^k.
    void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational &value);

    friend bool operator==(const StructureConstants &, const StructureConstants &) = default;

private:
    std::size_t dim_;
    std::vector<Rational> c_;
};

/// C_ij^k != -C_ji^k. Indices are 1-based, as printed.
class AntisymmetryViolation : public Error
{
public:
    explicit AntisymmetryViolation(std::array<std::size_t, 3> index);
    std::array<std::size_t, 3> index;
};

/// Jacobi sum nonzero for (i, j, k) at output index l. 1-based.
class JacobiViolation : public Error
{
public:
    explicit JacobiViolation(std::array<std::size_t, 4> index);
    std::array<std::size_t, 4> index;
};

class LieAlgebra;

/// Checks antisymmetry then the Jacobi identity; throws the first violation found.
LieAlgebra validate_algebra(StructureConstants c, std::string name = "");

/// A finite-dimensional Lie algebra given by structure constants in a fixed
/// basis: [X_i, X_j] = sum_k C_ij^k X_k. Immutable once validated.
class LieAlgebra
{
public:
    std::size_t dim() const noexcept { return c_.dim(); }
    const std::string &name() const noexcept { return name_; }
    const StructureConstants &structure_constants() const noexcept { return c_; }
    const Rational &c(std::size_t i, std::size_t j, std::size_t k) const { return c_(i, j, k); }

    /// Bracket of two elements given by coefficient vectors.
    std::vector<Rational> bracket(std::span<const Rational> x, std::span<const Rational> y) const;

    friend LieAlgebra validate_algebra(StructureConstants c, std::string name);

private:
    LieAlgebra(StructureConstants c, std::string name) : c_(std::move(c)), name_(std::move(name)) {}

    StructureConstants c_;
    std::string name_;
};

/// Square matrix over the rationals, row-major.
class AdjointMatrix
{
public:
    explicit AdjointMatrix(std::size_t dim = 0) : dim_(dim), a_(dim * dim) {}

    std::size_t dim() const noexcept { return dim_; }
    const Rational &operator()(std::size_t row, std::size_t col) const { return a_[row * dim_ + col]; }
    Rational &operator()(std::size_t row, std::size_t col) { return a_[row * dim_ + col]; }
    bool is_zero() const;
    Rational trace() const;

    friend AdjointMatrix operator*(const AdjointMatrix &a, const AdjointMatrix &b);
    friend AdjointMatrix operator-(const AdjointMatrix &a, const AdjointMatrix &b);
    friend bool operator==(const AdjointMatrix &, const AdjointMatrix &) = default;

private:
    std::size_t dim_;
    std::vector<Rational> a_;
};

/// Matrix of ad_X, entries (ad_X)^a_b = sum_i X_i C_ib^a.
AdjointMatrix adjoint(const LieAlgebra &g, std::span<const Rational> x);

/// Poisson bivector pi^{ij}(x) with polynomial components.
class PoissonTensor
{
public:
    PoissonTensor() = default;
    /// components[i][j]; must be antisymmetric (throws otherwise).
    explicit PoissonTensor(std::vector<std::vector<Polynomial>> components);

    std::size_t dim() const noexcept { return pi_.size(); }
    const Polynomial &operator()(std::size_t i, std::size_t j) const { return pi_[i][j]; }
    /// Every component is homogeneous of degree 1 (zero counts as linear).
    bool is_linear() const noexcept { return linear_; }
    /// sum_l (pi^{lk} d_l pi^{ij} + pi^{li} d_l pi^{jk} + pi^{lj} d_l pi^{ki}) == 0
    bool satisfies_jacobi() const;
    /// (f, g) -> sum pi^{ij} d_i f d_j g
    BiDiffOperator bracket_operator() const;
    Polynomial bracket(const Polynomial &f, const Polynomial &g) const;

private:
    std::vector<std::vector<Polynomial>> pi_;
    bool linear_ = true;
};

/// Kirillov-Poisson tensor pi^{ij} = sum_k C_ij^k x^k.
PoissonTensor poisson_tensor(const LieAlgebra &g);

/// D_r = sum Tr(ad_{i1} ... ad_{ir}) d_{i1...ir}, summed over all ordered
/// words and collected by unordered multi-index. Requires r >= 2.
DiffOperator trace_operator(const LieAlgebra &g, unsigned r);

/// Named fixtures: abelian3, heis3, so3, sl2, aff1, filiform4.
LieAlgebra catalog(std::string_view name);
std::vector<std::string> catalog_names();

/// {"dim": d, "name": s, "brackets": [[i, j, k, "p/q"], ...]} with 1-based
/// indices and i < j; antisymmetric partners are implied.
LieAlgebra algebra_from_json(const nlohmann::json &j);
nlohmann::json algebra_to_json(const LieAlgebra &g);

} // namespace starforge

#endif
