#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "starforge/graph.hpp"
#include "starforge/random_poly.hpp"

using namespace starforge;
using starforge::test::P;

namespace
{

// Antisymmetric quadratic bivector on R^3; Jacobi is not needed for the
// identities checked here.
PoissonTensor quadratic_bivector(std::uint64_t seed)
{
    RandomPolynomials rp(seed);
    std::vector<std::vector<Polynomial>> c(3, std::vector<Polynomial>(3, Polynomial(3)));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j)
        {
            c[i][j] = rp.polynomial(3, 2, 3);
            c[j][i] = -c[i][j];
        }
    return PoissonTensor(std::move(c));
}

std::vector<int> random_perm(std::size_t n, std::mt19937_64 &rng)
{
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

} // namespace

TEST_SUITE("kgraph")
{
    TEST_CASE("enumeration counts")
    {
        CHECK(enumerate(0).size() == 1);
        CHECK(enumerate(1).size() == 2);
        CHECK(enumerate(2).size() == 36);
        CHECK(enumerate(3).size() == 1728);
        CHECK_THROWS_AS(enumerate(5), InvalidArgument);
        const auto g1 = enumerate(1);
        CHECK(g1[0].encode() == "1:(L,R)");
        CHECK(g1[1].encode() == "1:(R,L)");
    }

    TEST_CASE("encoding")
    {
        for (const Graph &g : enumerate(2))
            CHECK(Graph::decode(g.encode()) == g);
        CHECK(Graph::decode("0:").n() == 0);
        CHECK(Graph::decode("3:(L,2)(3,L)(R,2)").edges() ==
              std::vector<Graph::Edge>{{kLeft, 1}, {2, kLeft}, {kRight, 1}});
        CHECK_THROWS_AS(Graph::decode("1:(1,R)"), ParseError);
        CHECK_THROWS_AS(Graph::decode("1:(L,L)"), ParseError);
        CHECK_THROWS_AS(Graph::decode("2:(L,R)"), ParseError);
        CHECK_THROWS_AS(Graph::decode("1:(L,3)"), ParseError);
        CHECK_THROWS_AS(Graph::decode("1 (L,R)"), ParseError);
        CHECK_THROWS_AS(Graph({{kLeft, kLeft}}), InvalidArgument);
        CHECK(wheel1(3).encode() == "3:(L,2)(R,3)(R,1)");
        CHECK(wheel2(3).encode() == "3:(R,2)(R,3)(R,1)");
    }

    TEST_CASE("n = 2 census")
    {
        const Graph g1 = Graph::decode("2:(L,R)(L,R)");
        const Graph g2 = Graph::decode("2:(2,L)(R,L)");
        const Graph g2m = Graph::decode("2:(2,R)(L,R)");
        const Graph g3 = Graph::decode("2:(L,2)(R,1)");
        std::map<std::string, std::size_t> seen;
        for (const Graph &g : enumerate(2))
        {
            const GraphClass c = canonicalize(g);
            std::string label = "other";
            if (is_bad(g))
                label = "bad";
            else if (c.representative == canonicalize(g1).representative)
                label = "g1";
            else if (c.representative == canonicalize(g2).representative)
                label = "g2";
            else if (c.representative == canonicalize(g2m).representative)
                label = "mirror";
            else if (c.representative == canonicalize(g3).representative)
                label = "g3";
            ++seen[label];
        }
        CHECK(seen == std::map<std::string, std::size_t>{{"bad", 8}, {"g1", 4}, {"g2", 8}, {"mirror", 8}, {"g3", 8}});
        CHECK(canonicalize(g1).symmetry_count == 4);
        CHECK(canonicalize(g2).symmetry_count == 8);
        CHECK(canonicalize(g3).symmetry_count == 8);
    }

    TEST_CASE("class invariants")
    {
        const GraphClass a = canonicalize(Graph::decode("1:(L,R)"));
        const GraphClass b = canonicalize(Graph::decode("1:(R,L)"));
        CHECK(a.representative == b.representative);
        CHECK(a.sign == -b.sign);
        CHECK(a.symmetry_count == 2);

        std::mt19937_64 rng(4);
        for (unsigned n = 1; n <= 3; ++n)
        {
            std::size_t total = 0;
            std::map<std::string, std::size_t> classes;
            for (const Graph &g : enumerate(n))
            {
                const GraphClass c = canonicalize(g);
                ++classes[c.representative.encode()];
                const std::size_t group = (n == 3 ? 6 : n) * (std::size_t{1} << n);
                CHECK(group % c.symmetry_count == 0);
                const Graph h = g.transformed(random_perm(n, rng), static_cast<std::uint32_t>(rng() % (1u << n)));
                CHECK(canonicalize(h).representative == c.representative);
            }
            for (const auto &[key, count] : classes)
            {
                CHECK(canonicalize(Graph::decode(key)).symmetry_count == count);
                total += count;
            }
            CHECK(total == enumerate(n).size());
        }
    }

    TEST_CASE("classification")
    {
        const GraphKind g1 = classify(Graph::decode("2:(L,R)(L,R)"));
        CHECK(g1.type == GraphKind::Type::Union);
        REQUIRE(g1.components.size() == 2);
        CHECK(g1.components[0].encode() == "1:(L,R)");
        CHECK(g1.components[1].encode() == "1:(L,R)");

        const GraphKind g3 = classify(Graph::decode("2:(L,2)(R,1)"));
        CHECK(g3.type == GraphKind::Type::Wheel1);
        CHECK(g3.r == 2);
        const GraphKind w2 = classify(Graph::decode("2:(R,2)(R,1)"));
        CHECK(w2.type == GraphKind::Type::Wheel2);
        CHECK(classify(Graph::decode("2:(2,L)(R,L)")).type == GraphKind::Type::Other);
        CHECK(classify(Graph::decode("2:(L,2)(L,R)")).type == GraphKind::Type::Other);
        CHECK(classify(Graph::decode("2:(L,2)(L,1)")).type == GraphKind::Type::Bad);

        std::mt19937_64 rng(9);
        for (unsigned r = 2; r <= 4; ++r)
        {
            const Graph w = wheel1(r).transformed(random_perm(r, rng), static_cast<std::uint32_t>(rng()) % (1u << r));
            const GraphKind k = classify(w);
            CHECK(k.type == GraphKind::Type::Wheel1);
            CHECK(k.r == r);
            CHECK(classify(wheel2(r)).type == GraphKind::Type::Wheel2);
            CHECK(has_internal_cycle(w));
        }
        CHECK_FALSE(has_internal_cycle(Graph::decode("2:(2,L)(R,L)")));
    }

    TEST_CASE("decomposition")
    {
        CHECK(decompose(Graph()).empty());
        CHECK(decompose(Graph::decode("2:(L,2)(R,1)")).size() == 1);
        const auto parts = decompose(Graph::decode("3:(L,3)(R,L)(R,1)"));
        REQUIRE(parts.size() == 2);
        CHECK(parts[0].encode() == "2:(L,2)(R,1)");
        CHECK(parts[1].encode() == "1:(R,L)");
    }

    TEST_CASE("operators of small graphs")
    {
        const PoissonTensor so3 = poisson_tensor(catalog("so3"));
        CHECK(bidiff_of_graph(Graph(), so3) == BiDiffOperator::multiplication(3));
        CHECK(bidiff_of_graph(Graph::decode("1:(L,R)"), so3) == so3.bracket_operator());
        CHECK(bidiff_of_graph(Graph::decode("1:(R,L)"), so3) == so3.bracket_operator() * Rational(-1));
        // two edges into vertex 1 differentiate a linear tensor twice
        CHECK(bidiff_of_graph(Graph::decode("3:(L,R)(1,L)(1,R)"), so3).is_zero());
        CHECK(bidiff_of_graph(Graph::decode("3:(L,2)(R,L)(2,R)"), so3).is_zero());
    }

    TEST_CASE("operator of a three vertex graph matches the explicit sum")
    {
        // (L,2)(3,L)(R,2): pi^{a b} d_{b f} pi^{c d} d_c pi^{e f} d_{a d} f d_e g
        const PoissonTensor pi = quadratic_bivector(17);
        const Polynomial f = P("x1^3*x2 + x2^2*x3^2 - x1*x3", 3);
        const Polynomial g = P("x1*x2*x3 + x3^3", 3);
        Polynomial expect(3);
        auto u = [](std::initializer_list<std::size_t> idx) {
            MultiIndex m(3);
            for (auto i : idx)
                m[i] += 1;
            return m;
        };
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                for (std::size_t c = 0; c < 3; ++c)
                    for (std::size_t d = 0; d < 3; ++d)
                        for (std::size_t e = 0; e < 3; ++e)
                            for (std::size_t ff = 0; ff < 3; ++ff)
                                expect += pi(a, b) * pi(c, d).derivative(u({b, ff})) * pi(e, ff).derivative(c) *
                                          f.derivative(u({a, d})) * g.derivative(e);
        const BiDiffOperator op = bidiff_of_graph(Graph::decode("3:(L,2)(3,L)(R,2)"), pi);
        CHECK(op.apply(f, g) == expect);
    }

    TEST_CASE("sign coherence within a class")
    {
        const PoissonTensor pi = quadratic_bivector(23);
        std::mt19937_64 rng(2);
        for (unsigned n = 1; n <= 3; ++n)
        {
            const auto all = enumerate(n);
            for (int trial = 0; trial < 12; ++trial)
            {
                const Graph &g = all[rng() % all.size()];
                const GraphClass c = canonicalize(g);
                const BiDiffOperator rep = bidiff_of_graph(c.representative, pi);
                CHECK(bidiff_of_graph(g, pi) == rep * Rational(c.sign));
                if (c.odd_automorphism)
                    CHECK(rep.is_zero());
            }
        }
    }
}
