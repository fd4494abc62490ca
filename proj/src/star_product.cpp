#include "starforge/star_product.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "starforge/errors.hpp"
#include "starforge/parse.hpp"
#include "starforge/random_poly.hpp"

namespace starforge
{

StarProduct::StarProduct(std::vector<BiDiffOperator> cochains, std::vector<bool> estimated,
                         std::optional<PoissonTensor> pi)
    : cochains_(std::move(cochains)), estimated_(std::move(estimated)), pi_(std::move(pi))
{
    if (cochains_.empty())
        throw InvalidArgument("a star product needs at least C_0");
    dim_ = cochains_.front().dim();
    if (cochains_.front() != BiDiffOperator::multiplication(dim_))
        throw InvalidArgument("C_0 must be the pointwise product");
    for (const auto &c : cochains_)
        if (c.dim() != dim_)
            throw DimensionMismatch(dim_, c.dim());
    if (estimated_.empty())
        estimated_.assign(cochains_.size(), false);
    if (estimated_.size() != cochains_.size())
        throw InvalidArgument("one provenance flag per cochain");
    if (pi_ && pi_->dim() != dim_)
        throw DimensionMismatch(dim_, pi_->dim());
}

bool StarProduct::exact() const
{
    return std::none_of(estimated_.begin(), estimated_.end(), [](bool b) { return b; });
}

HSeries StarProduct::multiply(const Polynomial &f, const Polynomial &g) const
{
    if (f.dim() != dim_)
        throw DimensionMismatch(dim_, f.dim());
    if (g.dim() != dim_)
        throw DimensionMismatch(dim_, g.dim());
    HSeries out(dim_, order());
    for (unsigned r = 0; r <= order(); ++r)
        out[r] = cochains_[r].apply(f, g);
    return out;
}

HSeries StarProduct::multiply(const HSeries &f, const HSeries &g) const
{
    const unsigned n = std::min({order(), f.order(), g.order()});
    HSeries out(dim_, n);
    for (unsigned a = 0; a <= n; ++a)
    {
        if (f[a].is_zero())
            continue;
        for (unsigned b = 0; a + b <= n; ++b)
        {
            if (g[b].is_zero())
                continue;
            for (unsigned r = 0; a + b + r <= n; ++r)
                out[a + b + r] += cochains_[r].apply(f[a], g[b]);
        }
    }
    return out;
}

namespace
{

nlohmann::json exponents_json(const MultiIndex &m)
{
    nlohmann::json j = nlohmann::json::array();
    for (auto e : m.exponents())
        j.push_back(e);
    return j;
}

} // namespace

nlohmann::json StarProduct::to_json() const
{
    nlohmann::json cochains = nlohmann::json::array();
    for (unsigned r = 0; r <= order(); ++r)
    {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto &[key, c] : cochains_[r].terms())
            terms.push_back({{"I", exponents_json(key.first)}, {"J", exponents_json(key.second)}, {"coeff", to_string(c)}});
        cochains.push_back({{"order", r}, {"estimated", static_cast<bool>(estimated_[r])}, {"terms", terms}});
    }
    return {{"dim", dim_}, {"order", order()}, {"cochains", cochains}};
}

// ---------------------------------------------------------------------------

std::vector<GraphClass> graph_classes(unsigned n, unsigned cap)
{
    std::set<Graph> seen;
    std::vector<GraphClass> out;
    std::vector<int> perm(n);
    for (const Graph &g : enumerate(n, cap))
    {
        if (seen.count(g))
            continue;
        out.push_back(canonicalize(g));
        std::iota(perm.begin(), perm.end(), 0);
        do
            for (std::uint32_t swaps = 0; swaps < (1u << n); ++swaps)
                seen.insert(g.transformed(perm, swaps));
        while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::sort(out.begin(), out.end(),
              [](const GraphClass &a, const GraphClass &b) { return a.representative.encode() < b.representative.encode(); });
    return out;
}

StarProduct assemble_kontsevich(const PoissonTensor &pi, unsigned order, const WeightTable &table, bool include_wheels)
{
    const std::size_t d = pi.dim();
    std::vector<BiDiffOperator> cochains{BiDiffOperator::multiplication(d)};
    std::vector<bool> estimated{false};
    for (unsigned n = 1; n <= order; ++n)
    {
        BiDiffOperator c(d);
        bool est = false;
        for (const GraphClass &cls : graph_classes(n))
        {
            const Graph &rep = cls.representative;
            if (cls.odd_automorphism || is_bad(rep))
                continue;
            if (!include_wheels && has_internal_cycle(rep))
                continue;
            BiDiffOperator b = bidiff_of_graph(rep, pi);
            if (b.is_zero())
                continue;
            std::optional<WeightValue> w = table.lookup(rep);
            if (!w)
            {
                if (decompose(rep).size() < 2)
                    throw MissingWeight(rep.encode());
                w = factorized_weight(rep, table);
            }
            if (w->exact && sgn(w->value) == 0)
                continue;
            est = est || !w->exact;
            c += b * (w->value * Rational(static_cast<unsigned long>(cls.symmetry_count)));
        }
        cochains.push_back(std::move(c));
        estimated.push_back(est || estimated.back());
    }
    return StarProduct(std::move(cochains), std::move(estimated), pi);
}

StarProduct gutt_star_product(const EnvelopingAlgebra &u, unsigned order)
{
    const std::size_t d = u.dim();
    std::vector<BiDiffOperator> cochains{BiDiffOperator::multiplication(d)};

    // all exponents of degree 1..order, by degree
    std::vector<std::vector<MultiIndex>> by_degree(order + 1);
    if (order >= 1)
    {
        for_each_sub_index(MultiIndex(std::vector<MultiIndex::value_type>(d, static_cast<MultiIndex::value_type>(order))),
                           [&](const MultiIndex &s) {
                               const unsigned k = s.degree();
                               if (k >= 1 && k <= order)
                                   by_degree[k].push_back(s);
                           });
    }

    std::map<std::pair<MultiIndex, MultiIndex>, HSeries> products;
    for (unsigned r = 1; r <= order; ++r)
    {
        // C_r has order <= r in each slot; solve in increasing total order
        BiDiffOperator c(d);
        for (unsigned total = std::max(2u, r); total <= 2 * r; ++total)
            for (unsigned p = 1; p <= r; ++p)
            {
                const unsigned q = total - p;
                if (q < 1 || q > r)
                    continue;
                for (const MultiIndex &i : by_degree[p])
                    for (const MultiIndex &j : by_degree[q])
                    {
                        auto key = std::make_pair(i, j);
                        auto it = products.find(key);
                        if (it == products.end())
                            it = products.emplace(key, u.gutt_product(Polynomial::monomial(i), Polynomial::monomial(j))).first;
                        const HSeries &prod = it->second;
                        Polynomial target = r <= prod.order() ? prod[r] : Polynomial(d);
                        const Polynomial fi = Polynomial::monomial(i), gj = Polynomial::monomial(j);
                        target -= c.apply(fi, gj);
                        if (!target.is_zero())
                            c.add_term(i, j, target * (1 / (factorial(i) * factorial(j))));
                    }
            }
        cochains.push_back(std::move(c));
    }
    return StarProduct(std::move(cochains), {}, poisson_tensor(u.algebra()));
}

StarProduct gutt_star_product(const LieAlgebra &g, unsigned order)
{
    EnvelopingAlgebra u(g);
    return gutt_star_product(u, order);
}

HSeries star_multiply(const StarProduct &s, const Polynomial &f, const Polynomial &g)
{
    return s.multiply(f, g);
}

HSeries associator_defect(const StarProduct &s, const Polynomial &f, const Polynomial &g, const Polynomial &h)
{
    const unsigned n = s.order();
    const HSeries fs(f, n), gs(g, n), hs(h, n);
    return s.multiply(s.multiply(fs, gs), hs) - s.multiply(fs, s.multiply(gs, hs));
}

HSeries covariance_defect(const StarProduct &s)
{
    if (!s.poisson() || !s.poisson()->is_linear())
        throw InvalidArgument("covariance needs a linear Poisson tensor");
    const PoissonTensor &pi = *s.poisson();
    const std::size_t d = s.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
        {
            const Polynomial x = Polynomial::variable(d, i), y = Polynomial::variable(d, j);
            HSeries defect = s.multiply(x, y) - s.multiply(y, x);
            if (defect.order() >= 1)
                defect[1] -= pi(i, j) * Rational(2);
            if (!defect.is_zero())
                return defect;
        }
    return HSeries(d, s.order());
}

std::vector<HSeries> weyl_defect(const StarProduct &s, const Polynomial &x, unsigned kmax)
{
    const std::size_t d = s.dim();
    std::vector<HSeries> out;
    HSeries power(Polynomial::constant(d, 1), s.order());
    const HSeries xs(x, s.order());
    for (unsigned k = 0; k <= kmax; ++k)
    {
        if (k > 0)
            power = s.multiply(power, xs);
        out.push_back(power - HSeries(x.pow(static_cast<int>(k)), s.order()));
    }
    return out;
}

DiffOperator eta_from_bidiff(const BiDiffOperator &phi)
{
    const std::size_t d = phi.dim();
    DiffOperator eta(d);
    for (const auto &[key, c] : phi.terms())
    {
        const unsigned ni = key.first.degree(), nj = key.second.degree();
        if (ni >= 2)
            throw InvalidArgument("first slot carries a derivative of order " + std::to_string(ni));
        if (ni == 0 || nj == 0)
            throw InvalidArgument("cochain does not vanish on constants");
        eta.add_term(key.first + key.second, c * Rational(-1, 1 + nj));
    }
    return eta;
}

// ---------------------------------------------------------------------------

EquivalenceOperator::EquivalenceOperator(std::vector<DiffOperator> terms, std::vector<bool> estimated,
                                         std::vector<ExponentTerm> exponent)
    : terms_(std::move(terms)), estimated_(std::move(estimated)), exponent_(std::move(exponent))
{
    if (terms_.empty())
        throw InvalidArgument("an equivalence needs rho_0");
    dim_ = terms_.front().dim();
    if (terms_.front() != DiffOperator::identity(dim_))
        throw InvalidArgument("rho_0 must be the identity");
    if (estimated_.empty())
        estimated_.assign(terms_.size(), false);
    if (estimated_.size() != terms_.size())
        throw InvalidArgument("one provenance flag per term");
}

EquivalenceOperator EquivalenceOperator::identity(std::size_t dim, unsigned order)
{
    std::vector<DiffOperator> t(order + 1, DiffOperator(dim));
    t[0] = DiffOperator::identity(dim);
    return EquivalenceOperator(std::move(t));
}

EquivalenceOperator EquivalenceOperator::exponential(std::size_t dim, unsigned order, std::vector<ExponentTerm> exponent)
{
    std::vector<DiffOperator> e(order + 1, DiffOperator(dim));
    std::vector<bool> est_e(order + 1, false);
    for (const auto &t : exponent)
    {
        if (t.r == 0 || t.r > order)
            continue;
        if (!t.op.is_constant_coefficient())
            throw InvalidArgument("exponential needs constant-coefficient operators");
        e[t.r] += t.op * t.coefficient;
        est_e[t.r] = est_e[t.r] || t.estimated;
    }
    // r rho_r = sum_{a=1}^r a E_a rho_{r-a}
    std::vector<DiffOperator> rho(order + 1, DiffOperator(dim));
    std::vector<bool> est(order + 1, false);
    rho[0] = DiffOperator::identity(dim);
    for (unsigned r = 1; r <= order; ++r)
    {
        DiffOperator acc(dim);
        for (unsigned a = 1; a <= r; ++a)
        {
            if (e[a].is_zero())
                continue;
            acc += e[a].compose(rho[r - a]) * Rational(a);
            est[r] = est[r] || est_e[a] || est[r - a];
        }
        rho[r] = acc * Rational(1, r);
        est[r] = est[r] || est[r - 1];
    }
    return EquivalenceOperator(std::move(rho), std::move(est), std::move(exponent));
}

bool EquivalenceOperator::is_identity() const
{
    for (unsigned r = 1; r <= order(); ++r)
        if (!terms_[r].is_zero())
            return false;
    return true;
}

HSeries EquivalenceOperator::apply(const Polynomial &f) const
{
    HSeries out(dim_, order());
    for (unsigned r = 0; r <= order(); ++r)
        out[r] = terms_[r].apply(f);
    return out;
}

HSeries EquivalenceOperator::apply(const HSeries &f) const
{
    const unsigned n = std::min(order(), f.order());
    HSeries out(dim_, n);
    for (unsigned a = 0; a <= n; ++a)
    {
        if (f[a].is_zero())
            continue;
        for (unsigned r = 0; a + r <= n; ++r)
            out[a + r] += terms_[r].apply(f[a]);
    }
    return out;
}

EquivalenceOperator EquivalenceOperator::inverse() const
{
    std::vector<DiffOperator> inv(order() + 1, DiffOperator(dim_));
    inv[0] = DiffOperator::identity(dim_);
    for (unsigned r = 1; r <= order(); ++r)
    {
        DiffOperator acc(dim_);
        for (unsigned a = 1; a <= r; ++a)
            if (!terms_[a].is_zero())
                acc -= terms_[a].compose(inv[r - a]);
        inv[r] = std::move(acc);
    }
    return EquivalenceOperator(std::move(inv), estimated_);
}

EquivalenceOperator weyl_normalize(const StarProduct &s)
{
    const std::size_t d = s.dim();
    const unsigned n = s.order();
    std::vector<DiffOperator> rho{DiffOperator::identity(d)};
    std::vector<bool> est{false};
    for (unsigned r = 1; r <= n; ++r)
    {
        BiDiffOperator phi = s.cochain(r);
        for (unsigned a = 1; a < r; ++a)
            if (!rho[r - a].is_zero())
                phi += s.cochain(a).compose_second(rho[r - a]);
        phi = phi.restrict_first_order(1);
        try
        {
            rho.push_back(eta_from_bidiff(phi) * Rational(-1));
        }
        catch (const InvalidArgument &e)
        {
            throw NormalizationError(r, e.what());
        }
        est.push_back(est.back() || s.estimated(r));
    }
    return EquivalenceOperator(std::move(rho), std::move(est));
}

EquivalenceOperator kontsevich_gutt_rho(const LieAlgebra &g, unsigned order, const WeightTable &table)
{
    std::vector<EquivalenceOperator::ExponentTerm> exponent;
    for (unsigned r = 2; r <= order; ++r)
    {
        DiffOperator dr = trace_operator(g, r);
        if (dr.is_zero())
            continue;
        const Graph wheel = wheel1(r);
        auto w = table.lookup(wheel);
        if (!w)
            throw MissingWeight(canonicalize(wheel).representative.encode());
        Rational coeff = factorial(r - 1) * w->value;
        mpz_mul_2exp(coeff.get_num_mpz_t(), coeff.get_num_mpz_t(), r);
        coeff.canonicalize();
        exponent.push_back({r, coeff, std::move(dr), !w->exact});
    }
    return EquivalenceOperator::exponential(g.dim(), order, std::move(exponent));
}

EquivalenceReport verify_equivalence(const LieAlgebra &g, unsigned order, const WeightTable &table, unsigned trials,
                                     std::uint64_t seed, unsigned degree)
{
    EquivalenceReport rep;
    rep.order = order;
    rep.trials = trials;
    rep.seed = seed;
    rep.max_defect.assign(order + 1, Rational(0));

    const std::size_t d = g.dim();
    const StarProduct k = assemble_kontsevich(poisson_tensor(g), order, table);
    const EquivalenceOperator rho = kontsevich_gutt_rho(g, order, table);
    const EquivalenceOperator normalized = weyl_normalize(k);
    rep.rho_match = normalized == rho;
    rep.rho_identity = rho.is_identity();
    rep.exact = k.exact();
    for (unsigned r = 0; r <= order; ++r)
        rep.exact = rep.exact && !rho.estimated(r);
    if (!rep.exact)
        rep.notes.push_back("estimated weights enter; defects are not expected to vanish exactly");
    if (!rep.rho_match)
        rep.notes.push_back("weyl_normalize and the closed form disagree");

    EnvelopingAlgebra u(g);
    RandomPolynomials gen(seed);
    for (unsigned t = 0; t < trials; ++t)
    {
        const Polynomial f = gen.polynomial(d, degree), h = gen.polynomial(d, degree);
        const HSeries lhs = rho.apply(u.gutt_product(HSeries(f, order), HSeries(h, order), order));
        const HSeries rhs = k.multiply(rho.apply(f), rho.apply(h));
        const HSeries defect = lhs - rhs;
        bool bad = false;
        for (unsigned r = 0; r <= order; ++r)
            for (const auto &[m, c] : defect[r].terms())
            {
                bad = true;
                rep.max_defect[r] = std::max(rep.max_defect[r], Rational(abs(c)));
            }
        rep.failing_trials += bad;
    }
    return rep;
}

} // namespace starforge
