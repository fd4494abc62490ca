#include "starforge/operators.hpp"

#include "starforge/errors.hpp"
#include "starforge/parse.hpp"

namespace starforge
{

namespace
{

void check_dim(std::size_t a, std::size_t b)
{
    if (a != b)
        throw DimensionMismatch(a, b);
}

std::string derivative_text(const MultiIndex &j, const char *prefix)
{
    std::string s;
    for (std::size_t i = 0; i < j.dim(); ++i)
    {
        if (j[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += prefix + std::to_string(i + 1);
        if (j[i] > 1)
            s += "^" + std::to_string(j[i]);
    }
    return s;
}

void append_operator_term(std::string &out, const Polynomial &coeff, const std::string &factor)
{
    const bool is_const = coeff.degree() <= 0;
    if (is_const)
    {
        const Rational c = coeff.coefficient(MultiIndex(coeff.dim()));
        const bool negative = sgn(c) < 0;
        const Rational mag = abs(c);
        out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
        if (factor.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += factor;
        else
            out += to_string(mag) + "*" + factor;
        return;
    }
    std::string c = to_string(coeff);
    if (coeff.size() > 1)
        c = "(" + c + ")";
    if (out.empty())
        out = c;
    else if (c.front() == '-')
        out += " - " + c.substr(1);
    else
        out += " + " + c;
    if (!factor.empty())
        out += "*" + factor;
}

} // namespace

DiffOperator DiffOperator::identity(std::size_t dim)
{
    return partial(MultiIndex(dim));
}

DiffOperator DiffOperator::partial(const MultiIndex &j, const Rational &c)
{
    DiffOperator d(j.dim());
    d.add_term(j, Polynomial::constant(j.dim(), c));
    return d;
}

Polynomial DiffOperator::coefficient(const MultiIndex &j) const
{
    auto it = terms_.find(j);
    return it == terms_.end() ? Polynomial(dim_) : it->second;
}

void DiffOperator::add_term(const MultiIndex &j, const Polynomial &coeff)
{
    check_dim(dim_, j.dim());
    check_dim(dim_, coeff.dim());
    if (coeff.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(j, coeff);
    if (!inserted)
    {
        it->second += coeff;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Polynomial DiffOperator::apply(const Polynomial &f) const
{
    check_dim(dim_, f.dim());
    Polynomial out(dim_);
    for (const auto &[j, a] : terms_)
    {
        Polynomial df = f.derivative(j);
        if (!df.is_zero())
            out += a * df;
    }
    return out;
}

HSeries DiffOperator::apply(const HSeries &f) const
{
    HSeries out(f.dim(), f.order());
    for (unsigned r = 0; r <= f.order(); ++r)
        out[r] = apply(f[r]);
    return out;
}

DiffOperator DiffOperator::compose(const DiffOperator &other) const
{
    check_dim(dim_, other.dim_);
    DiffOperator out(dim_);
    for (const auto &[k, a] : terms_)
        for (const auto &[l, b] : other.terms_)
            for_each_sub_index(k, [&](const MultiIndex &k1) {
                Polynomial db = b.derivative(k1);
                if (db.is_zero())
                    return;
                out.add_term(k - k1 + l, binomial(k, k1) * (a * db));
            });
    return out;
}

DiffOperator &DiffOperator::operator+=(const DiffOperator &other)
{
    check_dim(dim_, other.dim_);
    for (const auto &[j, a] : other.terms_)
        add_term(j, a);
    return *this;
}

DiffOperator &DiffOperator::operator-=(const DiffOperator &other)
{
    check_dim(dim_, other.dim_);
    for (const auto &[j, a] : other.terms_)
        add_term(j, -a);
    return *this;
}

DiffOperator &DiffOperator::operator*=(const Rational &c)
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

bool DiffOperator::is_constant_coefficient() const
{
    for (const auto &t : terms_)
        if (t.second.degree() > 0)
            return false;
    return true;
}

bool DiffOperator::is_homogeneous(unsigned r) const
{
    for (const auto &t : terms_)
        if (t.first.degree() != r)
            return false;
    return true;
}

Polynomial DiffOperator::symbol() const
{
    if (!is_constant_coefficient())
        throw InvalidArgument("symbol requires a constant-coefficient operator");
    Polynomial s(dim_);
    for (const auto &[j, a] : terms_)
        s.add_term(j, a.coefficient(MultiIndex(dim_)));
    return s;
}

// ---------------------------------------------------------------------------

BiDiffOperator BiDiffOperator::multiplication(std::size_t dim)
{
    BiDiffOperator b(dim);
    b.add_term(MultiIndex(dim), MultiIndex(dim), Polynomial::constant(dim, 1));
    return b;
}

Polynomial BiDiffOperator::coefficient(const MultiIndex &i, const MultiIndex &j) const
{
    auto it = terms_.find(Key(i, j));
    return it == terms_.end() ? Polynomial(dim_) : it->second;
}

void BiDiffOperator::add_term(const MultiIndex &i, const MultiIndex &j, const Polynomial &coeff)
{
    check_dim(dim_, i.dim());
    check_dim(dim_, j.dim());
    check_dim(dim_, coeff.dim());
    if (coeff.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(Key(i, j), coeff);
    if (!inserted)
    {
        it->second += coeff;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Polynomial BiDiffOperator::apply(const Polynomial &f, const Polynomial &g) const
{
    check_dim(dim_, f.dim());
    check_dim(dim_, g.dim());
    Polynomial out(dim_);
    std::map<MultiIndex, Polynomial> df_cache, dg_cache;
    auto cached = [](std::map<MultiIndex, Polynomial> &cache, const Polynomial &p, const MultiIndex &k) -> const Polynomial & {
        auto it = cache.find(k);
        if (it == cache.end())
            it = cache.emplace(k, p.derivative(k)).first;
        return it->second;
    };
    for (const auto &[key, phi] : terms_)
    {
        const Polynomial &df = cached(df_cache, f, key.first);
        if (df.is_zero())
            continue;
        const Polynomial &dg = cached(dg_cache, g, key.second);
        if (dg.is_zero())
            continue;
        out += phi * (df * dg);
    }
    return out;
}

BiDiffOperator BiDiffOperator::compose_second(const DiffOperator &d) const
{
    check_dim(dim_, d.dim());
    BiDiffOperator out(dim_);
    for (const auto &[key, b] : terms_)
        for (const auto &[l, coeff] : d.terms())
            for_each_sub_index(key.second, [&](const MultiIndex &j1) {
                Polynomial dc = coeff.derivative(j1);
                if (dc.is_zero())
                    return;
                out.add_term(key.first, key.second - j1 + l, binomial(key.second, j1) * (b * dc));
            });
    return out;
}

BiDiffOperator BiDiffOperator::compose_first(const DiffOperator &d) const
{
    return transposed().compose_second(d).transposed();
}

BiDiffOperator BiDiffOperator::restrict_first_order(unsigned max_first) const
{
    BiDiffOperator out(dim_);
    for (const auto &[key, b] : terms_)
        if (key.first.degree() <= max_first)
            out.terms_.emplace(key, b);
    return out;
}

BiDiffOperator BiDiffOperator::transposed() const
{
    BiDiffOperator out(dim_);
    for (const auto &[key, b] : terms_)
        out.terms_.emplace(Key(key.second, key.first), b);
    return out;
}

bool BiDiffOperator::vanishes_on_constants() const
{
    for (const auto &t : terms_)
        if (t.first.first.is_zero() || t.first.second.is_zero())
            return false;
    return true;
}

BiDiffOperator &BiDiffOperator::operator+=(const BiDiffOperator &other)
{
    check_dim(dim_, other.dim_);
    for (const auto &[key, b] : other.terms_)
        add_term(key.first, key.second, b);
    return *this;
}

BiDiffOperator &BiDiffOperator::operator-=(const BiDiffOperator &other)
{
    check_dim(dim_, other.dim_);
    for (const auto &[key, b] : other.terms_)
        add_term(key.first, key.second, -b);
    return *this;
}

BiDiffOperator &BiDiffOperator::operator*=(const Rational &c)
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

BiDiffOperator juxtapose(const BiDiffOperator &a, const BiDiffOperator &b)
{
    check_dim(a.dim(), b.dim());
    BiDiffOperator out(a.dim());
    for (const auto &[ka, ca] : a.terms())
        for (const auto &[kb, cb] : b.terms())
            out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

BiDiffOperator hochschild_coboundary(const DiffOperator &eta)
{
    const std::size_t d = eta.dim();
    const MultiIndex none(d);
    BiDiffOperator out(d);
    for (const auto &[k, e] : eta.terms())
    {
        out.add_term(none, k, e);
        out.add_term(k, none, e);
        for_each_sub_index(k, [&](const MultiIndex &s) { out.add_term(s, k - s, -binomial(k, s) * e); });
    }
    return out;
}

std::string to_string(const DiffOperator &d)
{
    std::string out;
    for (auto it = d.terms().rbegin(); it != d.terms().rend(); ++it)
        append_operator_term(out, it->second, derivative_text(it->first, "d"));
    return out.empty() ? "0" : out;
}

std::string to_string(const BiDiffOperator &b)
{
    std::string out;
    for (auto it = b.terms().rbegin(); it != b.terms().rend(); ++it)
    {
        std::string f = derivative_text(it->first.first, "d");
        std::string g = derivative_text(it->first.second, "d");
        f = f.empty() ? "f" : f + "(f)";
        g = g.empty() ? "g" : g + "(g)";
        append_operator_term(out, it->second, f + "*" + g);
    }
    return out.empty() ? "0" : out;
}

} // namespace starforge
