#include "starforge/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "starforge/errors.hpp"

namespace starforge
{

namespace
{

std::string target_text(int t)
{
    if (t == kLeft)
        return "L";
    if (t == kRight)
        return "R";
    return std::to_string(t + 1);
}

} // namespace

Graph::Graph(std::vector<Edge> edges) : edges_(std::move(edges))
{
    const int n = static_cast<int>(edges_.size());
    for (int k = 0; k < n; ++k)
    {
        auto [t, u] = edges_[k];
        for (int x : {t, u})
        {
            if (x < kLeft || x >= n)
                throw InvalidArgument("edge target out of range at vertex " + std::to_string(k + 1));
            if (x == k)
                throw InvalidArgument("loop at vertex " + std::to_string(k + 1));
        }
        if (t == u)
            throw InvalidArgument("parallel edges at vertex " + std::to_string(k + 1));
    }
}

std::string Graph::encode() const
{
    std::string s = std::to_string(n()) + ":";
    for (const auto &[t, u] : edges_)
        s += "(" + target_text(t) + "," + target_text(u) + ")";
    return s;
}

Graph Graph::decode(std::string_view text)
{
    std::size_t pos = 0;
    auto fail = [&](const std::string &msg) { throw ParseError(pos, msg); };
    auto read_int = [&]() {
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected a number");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        {
            v = v * 10 + (text[pos] - '0');
            if (v > 64)
                fail("number too large");
            ++pos;
        }
        return static_cast<int>(v);
    };
    auto expect = [&](char c) {
        if (pos >= text.size() || text[pos] != c)
            fail(std::string("expected '") + c + "'");
        ++pos;
    };
    auto read_target = [&]() {
        if (pos < text.size() && text[pos] == 'L')
        {
            ++pos;
            return kLeft;
        }
        if (pos < text.size() && text[pos] == 'R')
        {
            ++pos;
            return kRight;
        }
        const int v = read_int();
        if (v < 1)
            fail("vertex labels start at 1");
        return v - 1;
    };

    const int n = read_int();
    expect(':');
    std::vector<Edge> edges;
    for (int k = 0; k < n; ++k)
    {
        expect('(');
        const int t = read_target();
        expect(',');
        const int u = read_target();
        expect(')');
        edges.emplace_back(t, u);
    }
    if (pos != text.size())
        fail("trailing characters");
    try
    {
        return Graph(std::move(edges));
    }
    catch (const InvalidArgument &e)
    {
        throw ParseError(0, e.what());
    }
}

Graph Graph::transformed(const std::vector<int> &perm, std::uint32_t swaps) const
{
    const std::size_t n = edges_.size();
    auto map = [&](int t) { return t < 0 ? t : perm[t]; };
    std::vector<Edge> e(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        Edge x{map(edges_[k].first), map(edges_[k].second)};
        if (swaps >> k & 1u)
            std::swap(x.first, x.second);
        e[perm[k]] = x;
    }
    Graph g;
    g.edges_ = std::move(e);
    return g;
}

unsigned Graph::in_degree(int target) const
{
    unsigned c = 0;
    for (const auto &[t, u] : edges_)
        c += (t == target) + (u == target);
    return c;
}

std::vector<Graph> enumerate(unsigned n, unsigned cap)
{
    if (n > cap)
        throw InvalidArgument("enumeration limited to n <= " + std::to_string(cap));
    // ordered pairs of distinct targets for each vertex
    std::vector<std::vector<Graph::Edge>> choices(n);
    for (unsigned k = 0; k < n; ++k)
    {
        std::vector<int> targets{kLeft, kRight};
        for (unsigned v = 0; v < n; ++v)
            if (v != k)
                targets.push_back(static_cast<int>(v));
        for (int t : targets)
            for (int u : targets)
                if (t != u)
                    choices[k].emplace_back(t, u);
    }
    std::vector<Graph> out;
    std::vector<Graph::Edge> cur(n);
    std::function<void(unsigned)> rec = [&](unsigned k) {
        if (k == n)
        {
            out.emplace_back(cur);
            return;
        }
        for (const auto &e : choices[k])
        {
            cur[k] = e;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

GraphClass canonicalize(const Graph &g)
{
    const std::size_t n = g.n();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    GraphClass cls;
    cls.representative = g;
    bool have_even = false, have_odd = false;
    std::set<Graph> orbit;
    do
    {
        for (std::uint32_t swaps = 0; swaps < (1u << n); ++swaps)
        {
            Graph h = g.transformed(perm, swaps);
            const bool odd = std::popcount(swaps) % 2;
            if (h < cls.representative)
            {
                cls.representative = h;
                have_even = !odd;
                have_odd = odd;
            }
            else if (h == cls.representative)
            {
                (odd ? have_odd : have_even) = true;
            }
            orbit.insert(std::move(h));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    cls.symmetry_count = orbit.size();
    cls.odd_automorphism = have_even && have_odd;
    cls.sign = have_even ? 1 : -1;
    return cls;
}

std::string to_string(GraphKind::Type t)
{
    switch (t)
    {
    case GraphKind::Type::Bad:
        return "bad";
    case GraphKind::Type::Wheel1:
        return "wheel1";
    case GraphKind::Type::Wheel2:
        return "wheel2";
    case GraphKind::Type::Union:
        return "union";
    case GraphKind::Type::Other:
        break;
    }
    return "other";
}

bool is_bad(const Graph &g)
{
    return g.n() >= 1 && (g.in_degree(kLeft) == 0 || g.in_degree(kRight) == 0);
}

bool has_internal_cycle(const Graph &g)
{
    const std::size_t n = g.n();
    std::vector<int> state(n, 0);
    std::function<bool(int)> visit = [&](int v) {
        state[v] = 1;
        for (int t : {g[v].first, g[v].second})
        {
            if (t < 0)
                continue;
            if (state[t] == 1)
                return true;
            if (state[t] == 0 && visit(t))
                return true;
        }
        state[v] = 2;
        return false;
    };
    for (std::size_t v = 0; v < n; ++v)
        if (state[v] == 0 && visit(static_cast<int>(v)))
            return true;
    return false;
}

std::vector<Graph> decompose(const Graph &g)
{
    const std::size_t n = g.n();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (std::size_t k = 0; k < n; ++k)
        for (int t : {g[k].first, g[k].second})
            if (t >= 0)
            {
                adj[k].push_back(t);
                adj[t].push_back(static_cast<int>(k));
            }
    int count = 0;
    for (std::size_t s = 0; s < n; ++s)
    {
        if (comp[s] >= 0)
            continue;
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = count;
        while (!stack.empty())
        {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] < 0)
                {
                    comp[w] = count;
                    stack.push_back(w);
                }
        }
        ++count;
    }
    std::vector<Graph> out;
    for (int c = 0; c < count; ++c)
    {
        std::map<int, int> relabel;
        for (std::size_t k = 0; k < n; ++k)
            if (comp[k] == c)
                relabel.emplace(static_cast<int>(k), static_cast<int>(relabel.size()));
        std::vector<Graph::Edge> edges;
        for (const auto &[old, fresh] : relabel)
        {
            auto map = [&](int t) { return t < 0 ? t : relabel.at(t); };
            edges.emplace_back(map(g[old].first), map(g[old].second));
        }
        out.emplace_back(std::move(edges));
    }
    return out;
}

Graph wheel1(unsigned r)
{
    if (r < 2)
        throw InvalidArgument("wheels need r >= 2");
    std::vector<Graph::Edge> e;
    for (unsigned k = 0; k < r; ++k)
        e.emplace_back(k == 0 ? kLeft : kRight, static_cast<int>((k + 1) % r));
    return Graph(std::move(e));
}

Graph wheel2(unsigned r)
{
    if (r < 2)
        throw InvalidArgument("wheels need r >= 2");
    std::vector<Graph::Edge> e;
    for (unsigned k = 0; k < r; ++k)
        e.emplace_back(kRight, static_cast<int>((k + 1) % r));
    return Graph(std::move(e));
}

GraphKind classify(const Graph &g)
{
    GraphKind kind;
    const unsigned n = static_cast<unsigned>(g.n());
    if (n >= 2)
    {
        const Graph rep = canonicalize(g).representative;
        if (rep == canonicalize(wheel1(n)).representative)
        {
            kind.type = GraphKind::Type::Wheel1;
            kind.r = n;
            return kind;
        }
        if (rep == canonicalize(wheel2(n)).representative)
        {
            kind.type = GraphKind::Type::Wheel2;
            kind.r = n;
            return kind;
        }
    }
    if (is_bad(g))
    {
        kind.type = GraphKind::Type::Bad;
        return kind;
    }
    auto parts = decompose(g);
    if (parts.size() >= 2)
    {
        kind.type = GraphKind::Type::Union;
        kind.components = std::move(parts);
    }
    return kind;
}

BiDiffOperator bidiff_of_graph(const Graph &g, const PoissonTensor &pi)
{
    const std::size_t d = pi.dim();
    const std::size_t n = g.n();
    BiDiffOperator out(d);
    if (n == 0)
        return BiDiffOperator::multiplication(d);

    std::map<std::tuple<std::size_t, std::size_t, MultiIndex>, Polynomial> cache;
    auto dpi = [&](std::size_t i, std::size_t j, const MultiIndex &m) -> const Polynomial & {
        auto key = std::make_tuple(i, j, m);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, pi(i, j).derivative(m)).first;
        return it->second;
    };

    // idx[2k], idx[2k+1] are the indices carried by the two edges of vertex k
    std::vector<std::size_t> idx(2 * n);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == n)
        {
            std::vector<MultiIndex> incoming(n, MultiIndex(d));
            MultiIndex into_l(d), into_r(d);
            for (std::size_t v = 0; v < n; ++v)
                for (int side = 0; side < 2; ++side)
                {
                    const int t = side ? g[v].second : g[v].first;
                    MultiIndex &m = t == kLeft ? into_l : t == kRight ? into_r : incoming[t];
                    ++m[idx[2 * v + side]];
                }
            Polynomial coeff = Polynomial::constant(d, 1);
            for (std::size_t v = 0; v < n; ++v)
            {
                const Polynomial &c = dpi(idx[2 * v], idx[2 * v + 1], incoming[v]);
                if (c.is_zero())
                    return;
                coeff = coeff * c;
            }
            out.add_term(into_l, into_r, coeff);
            return;
        }
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
            {
                if (pi(i, j).is_zero())
                    continue;
                idx[2 * k] = i;
                idx[2 * k + 1] = j;
                rec(k + 1);
            }
    };
    rec(0);
    return out;
}

} // namespace starforge
