#include "starforge/enveloping.hpp"

#include <algorithm>
#include <functional>

#include "starforge/errors.hpp"

namespace starforge
{

UEAElement UEAElement::one(std::size_t dim)
{
    UEAElement u(dim);
    u.terms_.emplace(Word{}, Rational(1));
    return u;
}

Rational UEAElement::coefficient(const Word &w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

int UEAElement::length() const
{
    return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first.size());
}

void UEAElement::add_term(const Word &w, const Rational &c)
{
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted)
    {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

UEAElement &UEAElement::operator+=(const UEAElement &other)
{
    if (dim_ != other.dim_)
        throw DimensionMismatch(dim_, other.dim_);
    for (const auto &[w, c] : other.terms_)
        add_term(w, c);
    return *this;
}

UEAElement &UEAElement::operator-=(const UEAElement &other)
{
    if (dim_ != other.dim_)
        throw DimensionMismatch(dim_, other.dim_);
    for (const auto &[w, c] : other.terms_)
        add_term(w, -c);
    return *this;
}

UEAElement &UEAElement::operator*=(const Rational &c)
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

// ---------------------------------------------------------------------------

const UEAElement &EnvelopingAlgebra::letter_times_word(unsigned a, const Word &w) const
{
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(a, w);
    if (auto it = ltw_cache_.find(key); it != ltw_cache_.end())
        return it->second;

    const std::size_t d = dim();
    UEAElement out(d);
    if (w.empty() || a <= w.front())
    {
        Word v;
        v.reserve(w.size() + 1);
        v.push_back(static_cast<std::uint8_t>(a));
        v.insert(v.end(), w.begin(), w.end());
        out.add_term(v, 1);
    }
    else
    {
        // x_a x_b rest = x_b (x_a rest) + [x_a, x_b] rest, with b = w0 < a
        const unsigned b = w.front();
        const Word rest(w.begin() + 1, w.end());
        out += letter_times(b, letter_times_word(a, rest));
        for (unsigned k = 0; k < d; ++k)
        {
            const Rational &c = g_.c(a, b, k);
            if (sgn(c) != 0)
                out += letter_times_word(k, rest) * c;
        }
    }
    return ltw_cache_.emplace(std::move(key), std::move(out)).first->second;
}

UEAElement EnvelopingAlgebra::letter_times(unsigned a, const UEAElement &u) const
{
    UEAElement out(dim());
    for (const auto &[w, c] : u.terms())
        out += letter_times_word(a, w) * c;
    return out;
}

UEAElement EnvelopingAlgebra::normalize(std::span<const unsigned> word) const
{
    for (unsigned l : word)
        if (l >= dim())
            throw InvalidArgument("letter out of range");
    UEAElement u = UEAElement::one(dim());
    for (auto it = word.rbegin(); it != word.rend(); ++it)
        u = letter_times(*it, u);
    return u;
}

UEAElement EnvelopingAlgebra::multiply(const UEAElement &a, const UEAElement &b) const
{
    if (a.dim() != dim())
        throw DimensionMismatch(dim(), a.dim());
    if (b.dim() != dim())
        throw DimensionMismatch(dim(), b.dim());
    UEAElement out(dim());
    for (const auto &[w, c] : a.terms())
    {
        UEAElement v = b;
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            v = letter_times(*it, v);
        out += v * c;
    }
    return out;
}

const UEAElement &EnvelopingAlgebra::sigma_monomial(const MultiIndex &m) const
{
    std::lock_guard lock(mutex_);
    if (auto it = sigma_cache_.find(m); it != sigma_cache_.end())
        return it->second;
    const unsigned k = m.degree();
    UEAElement out(dim());
    if (k == 0)
        out = UEAElement::one(dim());
    else
        // average over arrangements, split by the first letter
        for (unsigned a = 0; a < dim(); ++a)
        {
            if (m[a] == 0)
                continue;
            out += letter_times(a, sigma_monomial(m - MultiIndex::unit(dim(), a))) * ratio(m[a], static_cast<long>(k));
        }
    return sigma_cache_.emplace(m, std::move(out)).first->second;
}

UEAElement EnvelopingAlgebra::symmetrize(const Polynomial &p) const
{
    if (p.dim() != dim())
        throw DimensionMismatch(dim(), p.dim());
    UEAElement out(dim());
    for (const auto &[m, c] : p.terms())
        out += sigma_monomial(m) * c;
    return out;
}

Polynomial EnvelopingAlgebra::unsymmetrize(const UEAElement &u) const
{
    if (u.dim() != dim())
        throw DimensionMismatch(dim(), u.dim());
    const std::size_t d = dim();
    Polynomial out(d);
    UEAElement rem = u;
    while (!rem.is_zero())
    {
        const std::size_t top = rem.terms().rbegin()->first.size();
        Polynomial lead(d);
        for (auto it = rem.terms().rbegin(); it != rem.terms().rend() && it->first.size() == top; ++it)
        {
            MultiIndex m(d);
            for (auto l : it->first)
                ++m[l];
            lead.add_term(m, it->second);
        }
        rem -= symmetrize(lead);
        out += lead;
    }
    return out;
}

void EnvelopingAlgebra::add_gutt_homogeneous(const Polynomial &p, const Polynomial &q, HSeries &out) const
{
    const int pq = p.degree() + q.degree();
    const Polynomial r = unsymmetrize(multiply(symmetrize(p), symmetrize(q)));
    for (const auto &[m, c] : r.terms())
    {
        const unsigned shift = static_cast<unsigned>(pq - static_cast<int>(m.degree()));
        Rational scale = c;
        mpz_mul_2exp(scale.get_num_mpz_t(), scale.get_num_mpz_t(), shift);
        scale.canonicalize();
        out[shift].add_term(m, scale);
    }
}

HSeries EnvelopingAlgebra::gutt_product(const Polynomial &p, const Polynomial &q) const
{
    if (p.dim() != dim())
        throw DimensionMismatch(dim(), p.dim());
    if (q.dim() != dim())
        throw DimensionMismatch(dim(), q.dim());
    const int top = std::max(0, p.degree() + q.degree());
    HSeries out(dim(), static_cast<unsigned>(top));
    for (int i = 0; i <= p.degree(); ++i)
    {
        const Polynomial pi = p.homogeneous_component(static_cast<unsigned>(i));
        if (pi.is_zero())
            continue;
        for (int j = 0; j <= q.degree(); ++j)
        {
            const Polynomial qj = q.homogeneous_component(static_cast<unsigned>(j));
            if (!qj.is_zero())
                add_gutt_homogeneous(pi, qj, out);
        }
    }
    return out;
}

HSeries EnvelopingAlgebra::gutt_product(const HSeries &p, const HSeries &q, unsigned order) const
{
    HSeries out(dim(), order);
    for (unsigned a = 0; a <= std::min(order, p.order()); ++a)
        for (unsigned b = 0; a + b <= order && b <= q.order(); ++b)
        {
            if (p[a].is_zero() || q[b].is_zero())
                continue;
            HSeries t = gutt_product(p[a], q[b]);
            for (unsigned s = 0; s <= t.order() && a + b + s <= order; ++s)
                out[a + b + s] += t[s];
        }
    return out;
}

UEAElement pbw_normalize(std::span<const unsigned> word, const LieAlgebra &g)
{
    return EnvelopingAlgebra(g).normalize(word);
}

UEAElement symmetrize(const Polynomial &p, const LieAlgebra &g)
{
    return EnvelopingAlgebra(g).symmetrize(p);
}

Polynomial unsymmetrize(const UEAElement &u, const LieAlgebra &g)
{
    return EnvelopingAlgebra(g).unsymmetrize(u);
}

HSeries gutt_product(const Polynomial &p, const Polynomial &q, const LieAlgebra &g)
{
    return EnvelopingAlgebra(g).gutt_product(p, q);
}

// ---------------------------------------------------------------------------

Rational bernoulli(unsigned m)
{
    std::vector<Rational> b{Rational(1)};
    for (unsigned n = 1; n <= m; ++n)
    {
        Rational s = 0;
        for (unsigned k = 0; k < n; ++k)
            s += binomial(n + 1, k) * b[k];
        b.push_back(-s / (n + 1));
    }
    return b[m];
}

namespace
{

using Vec = std::vector<Rational>;

Vec add(const Vec &a, const Vec &b)
{
    Vec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] + b[i];
    return c;
}

Vec scaled(Vec a, const Rational &s)
{
    for (auto &v : a)
        v *= s;
    return a;
}

// c_1 .. c_n of the Campbell-Hausdorff series for the plain Lie bracket.
std::vector<Vec> bch_coefficients(const Vec &x, const Vec &y, unsigned n, const LieAlgebra &g)
{
    const Vec sum = add(x, y);
    const Vec diff = add(x, scaled(y, -1));
    std::vector<Vec> z{Vec{}, sum};
    std::vector<unsigned> parts;

    for (unsigned m = 1; m < n; ++m)
    {
        Vec next = scaled(g.bracket(diff, z[m]), Rational(1, 2));
        for (unsigned p = 1; 2 * p <= m; ++p)
        {
            const Rational k = bernoulli(2 * p) / factorial(2 * p);
            // all compositions k_1 + ... + k_2p = m into positive parts
            parts.assign(2 * p, 1);
            std::function<void(unsigned, unsigned)> rec = [&](unsigned slot, unsigned left) {
                if (slot + 1 == parts.size())
                {
                    parts[slot] = left;
                    Vec acc = sum;
                    for (auto it = parts.rbegin(); it != parts.rend(); ++it)
                        acc = g.bracket(z[*it], acc);
                    next = add(next, scaled(acc, k));
                    return;
                }
                const unsigned remaining_slots = static_cast<unsigned>(parts.size() - slot - 1);
                for (unsigned v = 1; v + remaining_slots <= left; ++v)
                {
                    parts[slot] = v;
                    rec(slot + 1, left - v);
                }
            };
            rec(0, m);
        }
        z.push_back(scaled(next, Rational(1, m + 1)));
    }
    return z;
}

Vec linear_vector(const Polynomial &p, std::size_t d)
{
    if (p.dim() != d)
        throw DimensionMismatch(d, p.dim());
    return p.is_zero() ? Vec(d) : p.linear_coefficients();
}

} // namespace

std::vector<CHTerm> ch_series(const Polynomial &x, const Polynomial &y, unsigned n, const LieAlgebra &g)
{
    if (n < 1)
        throw InvalidArgument("CH series order must be at least 1");
    const std::size_t d = g.dim();
    const auto z = bch_coefficients(linear_vector(x, d), linear_vector(y, d), n, g);
    std::vector<CHTerm> out;
    Rational two_pow = 1;
    for (unsigned i = 1; i <= n; ++i)
    {
        HSeries v(d, n - 1);
        v[i - 1] = Polynomial::linear(z[i]) * two_pow;
        out.push_back({i, std::move(v)});
        two_pow *= 2;
    }
    return out;
}

Polynomial gutt_cochain(unsigned r, const Polynomial &x, const Polynomial &y, const LieAlgebra &g)
{
    const std::size_t d = g.dim();
    if (r == 0)
        return Polynomial::constant(d, 1);
    const auto z = bch_coefficients(linear_vector(x, d), linear_vector(y, d), r + 1, g);
    std::vector<Polynomial> c(r + 2, Polynomial(d));
    for (unsigned i = 2; i <= r + 1; ++i)
        c[i] = Polynomial::linear(z[i]);

    // choose multiplicities n_m of each part m with sum m n_m = r
    Polynomial total(d);
    std::function<void(unsigned, unsigned, const Polynomial &)> rec = [&](unsigned m, unsigned left,
                                                                          const Polynomial &acc) {
        if (left == 0)
        {
            total += acc;
            return;
        }
        if (m > left)
            return;
        Polynomial term = acc;
        for (unsigned k = 0; k * m <= left; ++k)
        {
            if (k > 0)
                term = term * c[m + 1] * Rational(1, k);
            rec(m + 1, left - k * m, term);
        }
    };
    rec(1, r, Polynomial::constant(d, 1));
    Rational two_pow = 1;
    mpz_mul_2exp(two_pow.get_num_mpz_t(), two_pow.get_num_mpz_t(), r);
    return total * two_pow;
}

Polynomial gutt_linear_cochain(unsigned r, const Polynomial &x, const Polynomial &f, const LieAlgebra &g)
{
    if (r < 1)
        throw InvalidArgument("linear cochain order must be at least 1");
    const std::size_t d = g.dim();
    if (f.dim() != d)
        throw DimensionMismatch(d, f.dim());
    const Vec xv = linear_vector(x, d);

    // w[b] carries the chain contracted from the X end: w_r[b] = X_b f,
    // w_{k-1}[a] = sum_{b,j} C_{b j}^a d_j w_k[b]
    std::vector<Polynomial> w(d, Polynomial(d));
    for (std::size_t b = 0; b < d; ++b)
        w[b] = f * xv[b];
    for (unsigned step = 1; step < r; ++step)
    {
        std::vector<Polynomial> next(d, Polynomial(d));
        for (std::size_t b = 0; b < d; ++b)
        {
            if (w[b].is_zero())
                continue;
            for (std::size_t j = 0; j < d; ++j)
            {
                Polynomial dw = w[b].derivative(j);
                if (dw.is_zero())
                    continue;
                for (std::size_t a = 0; a < d; ++a)
                    if (sgn(g.c(b, j, a)) != 0)
                        next[a] += dw * g.c(b, j, a);
            }
        }
        w = std::move(next);
    }
    const PoissonTensor pi = poisson_tensor(g);
    Polynomial out(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (!pi(i, j).is_zero())
                out += pi(i, j) * w[i].derivative(j);

    Rational pre = bernoulli(r) / factorial(r);
    mpz_mul_2exp(pre.get_num_mpz_t(), pre.get_num_mpz_t(), r);
    pre.canonicalize();
    if (r % 2)
        pre = -pre;
    return out * pre;
}

} // namespace starforge
