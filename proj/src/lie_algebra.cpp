#include "starforge/lie_algebra.hpp"

#include <functional>
#include <map>

namespace starforge
{

StructureConstants StructureConstants::from_nested(const std::vector<std::vector<std::vector<Rational>>> &c)
{
    const std::size_t d = c.size();
    StructureConstants s(d);
    for (std::size_t i = 0; i < d; ++i)
    {
        if (c[i].size() != d)
            throw InvalidArgument("structure constants are not cubical");
        for (std::size_t j = 0; j < d; ++j)
        {
            if (c[i][j].size() != d)
                throw InvalidArgument("structure constants are not cubical");
            for (std::size_t k = 0; k < d; ++k)
                s(i, j, k) = c[i][j][k];
        }
    }
    return s;
}

void StructureConstants::set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational &value)
{
    if (i >= dim_ || j >= dim_ || k >= dim_)
        throw InvalidArgument("bracket index out of range");
    (*this)(i, j, k) = value;
    (*this)(j, i, k) = -value;
}

AntisymmetryViolation::AntisymmetryViolation(std::array<std::size_t, 3> index)
    : Error("antisymmetry violated at (i,j,k) = (" + std::to_string(index[0]) + "," + std::to_string(index[1]) + "," +
            std::to_string(index[2]) + ")"),
      index(index)
{
}

JacobiViolation::JacobiViolation(std::array<std::size_t, 4> index)
    : Error("Jacobi identity violated at (i,j,k,l) = (" + std::to_string(index[0]) + "," + std::to_string(index[1]) +
            "," + std::to_string(index[2]) + "," + std::to_string(index[3]) + ")"),
      index(index)
{
}

LieAlgebra validate_algebra(StructureConstants c, std::string name)
{
    const std::size_t d = c.dim();
    if (d == 0)
        throw InvalidArgument("Lie algebra dimension must be positive");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (c(i, j, k) != -c(j, i, k))
                    throw AntisymmetryViolation({i + 1, j + 1, k + 1});
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                for (std::size_t l = 0; l < d; ++l)
                {
                    Rational s = 0;
                    for (std::size_t m = 0; m < d; ++m)
                        s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
                    if (sgn(s) != 0)
                        throw JacobiViolation({i + 1, j + 1, k + 1, l + 1});
                }
    return LieAlgebra(std::move(c), std::move(name));
}

std::vector<Rational> LieAlgebra::bracket(std::span<const Rational> x, std::span<const Rational> y) const
{
    const std::size_t d = dim();
    if (x.size() != d)
        throw DimensionMismatch(d, x.size());
    if (y.size() != d)
        throw DimensionMismatch(d, y.size());
    std::vector<Rational> z(d);
    for (std::size_t i = 0; i < d; ++i)
    {
        if (sgn(x[i]) == 0)
            continue;
        for (std::size_t j = 0; j < d; ++j)
        {
            if (sgn(y[j]) == 0)
                continue;
            const Rational xy = x[i] * y[j];
            for (std::size_t k = 0; k < d; ++k)
                if (sgn(c_(i, j, k)) != 0)
                    z[k] += xy * c_(i, j, k);
        }
    }
    return z;
}

// ---------------------------------------------------------------------------

bool AdjointMatrix::is_zero() const
{
    for (const auto &v : a_)
        if (sgn(v) != 0)
            return false;
    return true;
}

Rational AdjointMatrix::trace() const
{
    Rational t = 0;
    for (std::size_t i = 0; i < dim_; ++i)
        t += (*this)(i, i);
    return t;
}

AdjointMatrix operator*(const AdjointMatrix &a, const AdjointMatrix &b)
{
    if (a.dim_ != b.dim_)
        throw DimensionMismatch(a.dim_, b.dim_);
    const std::size_t d = a.dim_;
    AdjointMatrix m(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
        {
            if (sgn(a(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < d; ++j)
                if (sgn(b(k, j)) != 0)
                    m(i, j) += a(i, k) * b(k, j);
        }
    return m;
}

AdjointMatrix operator-(const AdjointMatrix &a, const AdjointMatrix &b)
{
    if (a.dim_ != b.dim_)
        throw DimensionMismatch(a.dim_, b.dim_);
    AdjointMatrix m(a.dim_);
    for (std::size_t i = 0; i < a.a_.size(); ++i)
        m.a_[i] = a.a_[i] - b.a_[i];
    return m;
}

AdjointMatrix adjoint(const LieAlgebra &g, std::span<const Rational> x)
{
    const std::size_t d = g.dim();
    if (x.size() != d)
        throw DimensionMismatch(d, x.size());
    AdjointMatrix m(d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t i = 0; i < d; ++i)
                m(a, b) += x[i] * g.c(i, b, a);
    return m;
}

// ---------------------------------------------------------------------------

PoissonTensor::PoissonTensor(std::vector<std::vector<Polynomial>> components) : pi_(std::move(components))
{
    const std::size_t d = pi_.size();
    for (std::size_t i = 0; i < d; ++i)
    {
        if (pi_[i].size() != d)
            throw InvalidArgument("Poisson tensor must be square");
        for (std::size_t j = 0; j < d; ++j)
            if (pi_[i][j].dim() != d)
                throw DimensionMismatch(d, pi_[i][j].dim());
    }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
        {
            if (pi_[i][j] != -pi_[j][i])
                throw InvalidArgument("Poisson tensor must be antisymmetric");
            linear_ = linear_ && pi_[i][j].is_homogeneous(1);
        }
}

bool PoissonTensor::satisfies_jacobi() const
{
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
            {
                Polynomial s(d);
                for (std::size_t l = 0; l < d; ++l)
                {
                    s += pi_[l][k] * pi_[i][j].derivative(l);
                    s += pi_[l][i] * pi_[j][k].derivative(l);
                    s += pi_[l][j] * pi_[k][i].derivative(l);
                }
                if (!s.is_zero())
                    return false;
            }
    return true;
}

BiDiffOperator PoissonTensor::bracket_operator() const
{
    const std::size_t d = dim();
    BiDiffOperator b(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            b.add_term(MultiIndex::unit(d, i), MultiIndex::unit(d, j), pi_[i][j]);
    return b;
}

Polynomial PoissonTensor::bracket(const Polynomial &f, const Polynomial &g) const
{
    return bracket_operator().apply(f, g);
}

PoissonTensor poisson_tensor(const LieAlgebra &g)
{
    const std::size_t d = g.dim();
    std::vector<std::vector<Polynomial>> pi(d, std::vector<Polynomial>(d, Polynomial(d)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                pi[i][j].add_term(MultiIndex::unit(d, k), g.c(i, j, k));
    return PoissonTensor(std::move(pi));
}

DiffOperator trace_operator(const LieAlgebra &g, unsigned r)
{
    if (r < 2)
        throw InvalidArgument("trace operator requires r >= 2");
    const std::size_t d = g.dim();
    std::vector<AdjointMatrix> ad;
    ad.reserve(d);
    for (std::size_t i = 0; i < d; ++i)
    {
        std::vector<Rational> e(d);
        e[i] = 1;
        ad.push_back(adjoint(g, e));
    }

    std::map<MultiIndex, Rational> coeff;
    std::vector<unsigned> word;
    // Depth-first over ordered words, carrying the running matrix product.
    std::function<void(const AdjointMatrix &)> visit = [&](const AdjointMatrix &prefix) {
        if (word.size() == r)
        {
            Rational t = prefix.trace();
            if (sgn(t) != 0)
                coeff[MultiIndex::from_letters(d, word)] += t;
            return;
        }
        for (unsigned i = 0; i < d; ++i)
        {
            AdjointMatrix next = word.empty() ? ad[i] : prefix * ad[i];
            if (next.is_zero())
                continue;
            word.push_back(i);
            visit(next);
            word.pop_back();
        }
    };
    visit(AdjointMatrix(d));

    DiffOperator op(d);
    for (const auto &[j, c] : coeff)
        op.add_term(j, Polynomial::constant(d, c));
    return op;
}

// ---------------------------------------------------------------------------

std::vector<std::string> catalog_names()
{
    return {"abelian3", "heis3", "so3", "sl2", "aff1", "filiform4"};
}

LieAlgebra catalog(std::string_view name)
{
    if (name == "abelian3")
        return validate_algebra(StructureConstants(3), "abelian3");
    if (name == "heis3")
    {
        StructureConstants c(3);
        c.set_bracket(0, 1, 2, 1);
        return validate_algebra(c, "heis3");
    }
    if (name == "so3")
    {
        StructureConstants c(3);
        c.set_bracket(0, 1, 2, 1);
        c.set_bracket(1, 2, 0, 1);
        c.set_bracket(2, 0, 1, 1);
        return validate_algebra(c, "so3");
    }
    if (name == "sl2")
    {
        // basis (H, E, F)
        StructureConstants c(3);
        c.set_bracket(0, 1, 1, 2);
        c.set_bracket(0, 2, 2, -2);
        c.set_bracket(1, 2, 0, 1);
        return validate_algebra(c, "sl2");
    }
    if (name == "aff1")
    {
        StructureConstants c(2);
        c.set_bracket(0, 1, 1, 1);
        return validate_algebra(c, "aff1");
    }
    if (name == "filiform4")
    {
        StructureConstants c(4);
        c.set_bracket(0, 1, 2, 1);
        c.set_bracket(0, 2, 3, 1);
        return validate_algebra(c, "filiform4");
    }
    throw InvalidArgument("unknown catalog algebra '" + std::string(name) + "'");
}

LieAlgebra algebra_from_json(const nlohmann::json &j)
{
    try
    {
        const auto d = j.at("dim").get<std::size_t>();
        if (d == 0)
            throw InvalidArgument("algebra dimension must be positive");
        StructureConstants c(d);
        for (const auto &entry : j.at("brackets"))
        {
            if (!entry.is_array() || entry.size() != 4)
                throw InvalidArgument("bracket entries must be [i, j, k, value]");
            const auto i = entry[0].get<std::size_t>();
            const auto jj = entry[1].get<std::size_t>();
            const auto k = entry[2].get<std::size_t>();
            if (i < 1 || jj < 1 || k < 1 || i > d || jj > d || k > d)
                throw InvalidArgument("bracket index out of range");
            if (i >= jj)
                throw InvalidArgument("bracket entries must list i < j");
            Rational v = entry[3].is_string() ? parse_rational(entry[3].get<std::string>())
                                              : Rational(entry[3].get<long>());
            c.set_bracket(i - 1, jj - 1, k - 1, v);
        }
        return validate_algebra(std::move(c), j.value("name", std::string()));
    }
    catch (const nlohmann::json::exception &e)
    {
        throw InvalidArgument(std::string("malformed algebra JSON: ") + e.what());
    }
}

nlohmann::json algebra_to_json(const LieAlgebra &g)
{
    nlohmann::json brackets = nlohmann::json::array();
    const std::size_t d = g.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                if (sgn(g.c(i, j, k)) != 0)
                    brackets.push_back({i + 1, j + 1, k + 1, to_string(g.c(i, j, k))});
    return {{"dim", d}, {"name", g.name()}, {"brackets", brackets}};
}

} // namespace starforge
