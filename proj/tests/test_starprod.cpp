#include <doctest.h>

#include "helpers.hpp"
#include "starforge/random_poly.hpp"
#include "starforge/star_product.hpp"

using namespace starforge;
using starforge::test::P;

namespace
{

const WeightTable &seed()
{
    static const WeightTable t = WeightTable::seed_table();
    return t;
}

StarProduct kontsevich(const char *name, unsigned order = 2, bool wheels = true)
{
    return assemble_kontsevich(poisson_tensor(catalog(name)), order, seed(), wheels);
}

} // namespace

TEST_SUITE("starprod")
{
    TEST_CASE("star product construction")
    {
        CHECK_THROWS_AS(StarProduct(std::vector<BiDiffOperator>{}), InvalidArgument);
        CHECK_THROWS_AS(StarProduct(std::vector<BiDiffOperator>{BiDiffOperator(2)}), InvalidArgument);
        const StarProduct s({BiDiffOperator::multiplication(2)});
        CHECK(s.order() == 0);
        CHECK(s.exact());
        CHECK(s.multiply(P("x1", 2), P("x2", 2))[0] == P("x1*x2", 2));
        const auto j = kontsevich("so3").to_json();
        CHECK(j["dim"] == 3);
        CHECK(j["order"] == 2);
        CHECK(j["cochains"].size() == 3);
    }

    TEST_CASE("graph classes")
    {
        CHECK(graph_classes(0).size() == 1);
        CHECK(graph_classes(1).size() == 1);
        std::size_t total = 0;
        for (const GraphClass &c : graph_classes(2))
            total += c.symmetry_count;
        CHECK(total == 36);
    }

    TEST_CASE("kontsevich cochains")
    {
        const StarProduct so3 = kontsevich("so3");
        CHECK(so3.cochain(1) == poisson_tensor(catalog("so3")).bracket_operator());
        CHECK(so3.exact());
        RandomPolynomials rp(1);
        for (int t = 0; t < 10; ++t)
        {
            const Polynomial f = rp.polynomial(3, 3), g = rp.polynomial(3, 3);
            CHECK(so3.cochain(2).apply(f, g) == test::c2_formula(poisson_tensor(catalog("so3")), f, g));
        }
        const StarProduct ab = kontsevich("abelian3", 3);
        for (unsigned r = 1; r <= 3; ++r)
            CHECK(ab.cochain(r).is_zero());
        CHECK(kontsevich("heis3").cochain(2) == gutt_star_product(catalog("heis3"), 2).cochain(2));
    }

    TEST_CASE("kontsevich products")
    {
        const StarProduct so3 = kontsevich("so3");
        const Polynomial x1 = P("x1", 3), x2 = P("x2", 3);
        CHECK(to_string(star_multiply(so3, x1, x1)) == "x1^2 + 1/3*h^2");
        const HSeries comm = star_multiply(so3, x1, x2) - star_multiply(so3, x2, x1);
        CHECK(to_string(comm) == "2*h*x3");
        CHECK(to_string(star_multiply(so3, P("1", 3), P("x1^2*x2", 3))) == "x1^2*x2");
        // without the wheel the trace term disappears
        CHECK(to_string(star_multiply(kontsevich("so3", 2, false), x1, x1)) == "x1^2");
    }

    TEST_CASE("associativity through the truncation order")
    {
        RandomPolynomials rp(2);
        for (const char *name : {"so3", "sl2", "aff1"})
        {
            const StarProduct k = kontsevich(name);
            const std::size_t d = k.dim();
            for (int t = 0; t < 5; ++t)
                CHECK(associator_defect(k, rp.polynomial(d, 2), rp.polynomial(d, 2), rp.polynomial(d, 2)).is_zero());
        }
    }

    TEST_CASE("covariance")
    {
        CHECK(covariance_defect(kontsevich("so3")).is_zero());
        CHECK(covariance_defect(gutt_star_product(catalog("sl2"), 3)).is_zero());
        CHECK(covariance_defect(kontsevich("abelian3")).is_zero());
        CHECK_THROWS_AS(covariance_defect(StarProduct({BiDiffOperator::multiplication(2)})), InvalidArgument);
        PoissonTensor quad({{Polynomial(2), P("x1*x2", 2)}, {P("-x1*x2", 2), Polynomial(2)}});
        CHECK_THROWS_AS(covariance_defect(assemble_kontsevich(quad, 1, seed())), InvalidArgument);
    }

    TEST_CASE("weyl property")
    {
        RandomPolynomials rp(4);
        for (const char *name : {"so3", "sl2", "aff1"})
        {
            const StarProduct g = gutt_star_product(catalog(name), 3);
            for (const HSeries &d : weyl_defect(g, rp.linear(g.dim()), 5))
                CHECK(d.is_zero());
        }
        const auto so3 = weyl_defect(kontsevich("so3"), P("x1", 3), 2);
        CHECK(so3[0].is_zero());
        CHECK(so3[1].is_zero());
        CHECK(to_string(so3[2]) == "1/3*h^2");
        for (const HSeries &d : weyl_defect(kontsevich("heis3"), P("x1 - 2*x2 + x3", 3), 4))
            CHECK(d.is_zero());
    }

    TEST_CASE("gutt cochains reproduce the product")
    {
        RandomPolynomials rp(6);
        for (const char *name : {"so3", "aff1", "heis3"})
        {
            const LieAlgebra g = catalog(name);
            const StarProduct s = gutt_star_product(g, 3);
            CHECK(s.cochain(1) == poisson_tensor(g).bracket_operator());
            for (int t = 0; t < 5; ++t)
            {
                const Polynomial f = rp.polynomial(g.dim(), 3), h = rp.polynomial(g.dim(), 3);
                CHECK(s.multiply(f, h) == gutt_product(f, h, g).extended(3).truncated(3));
            }
        }
    }

    TEST_CASE("eta from a bidifferential operator")
    {
        BiDiffOperator phi(3);
        phi.add_term(MultiIndex{1, 0, 0}, MultiIndex{0, 1, 0}, P("3", 3));
        phi.add_term(MultiIndex{0, 0, 1}, MultiIndex{0, 2, 0}, P("x1", 3));
        DiffOperator expect(3);
        expect.add_term(MultiIndex{1, 1, 0}, P("-3/2", 3));
        expect.add_term(MultiIndex{0, 2, 1}, P("-1/3*x1", 3));
        CHECK(eta_from_bidiff(phi) == expect);
        CHECK(eta_from_bidiff(BiDiffOperator(3)).is_zero());

        BiDiffOperator second(3);
        second.add_term(MultiIndex{2, 0, 0}, MultiIndex{1, 0, 0}, P("1", 3));
        CHECK_THROWS_AS(eta_from_bidiff(second), InvalidArgument);
        BiDiffOperator constant(3);
        constant.add_term(MultiIndex(3), MultiIndex{1, 0, 0}, P("1", 3));
        CHECK_THROWS_AS(eta_from_bidiff(constant), InvalidArgument);

        // the trace part of the second Kontsevich cochain on so3
        const DiffOperator d2 = trace_operator(catalog("so3"), 2);
        BiDiffOperator trace(3);
        for (std::size_t i = 0; i < 3; ++i)
            trace.add_term(MultiIndex::unit(3, i), MultiIndex::unit(3, i), P("1/3", 3));
        CHECK(eta_from_bidiff(trace) == d2 * Rational(1, 12));
    }

    TEST_CASE("equivalence operators")
    {
        const DiffOperator lap = trace_operator(catalog("so3"), 2);
        const EquivalenceOperator rho =
            EquivalenceOperator::exponential(3, 4, {{2, Rational(-1, 12), lap, false}});
        CHECK(rho.term(2) == lap * Rational(-1, 12));
        CHECK(rho.term(1).is_zero());
        CHECK(rho.term(4) == lap.compose(lap) * Rational(1, 288));
        const EquivalenceOperator inv = rho.inverse();
        RandomPolynomials rp(7);
        for (int t = 0; t < 5; ++t)
        {
            const Polynomial f = rp.polynomial(3, 5);
            CHECK(inv.apply(rho.apply(f)) == HSeries(f, 4));
        }
        CHECK(EquivalenceOperator::identity(3, 2).is_identity());
        CHECK_FALSE(rho.is_identity());
        CHECK_THROWS_AS(EquivalenceOperator({DiffOperator(3)}), InvalidArgument);
        DiffOperator nonconst(3);
        nonconst.add_term(MultiIndex{1, 0, 0}, P("x2", 3));
        CHECK_THROWS_AS(EquivalenceOperator::exponential(3, 2, {{1, 1, nonconst, false}}), InvalidArgument);
    }

    TEST_CASE("weyl normalization")
    {
        CHECK(weyl_normalize(gutt_star_product(catalog("sl2"), 3)).is_identity());
        CHECK(weyl_normalize(kontsevich("abelian3", 3)).is_identity());
        const EquivalenceOperator rho = weyl_normalize(kontsevich("so3"));
        CHECK(rho.term(1).is_zero());
        CHECK(rho.term(2) == trace_operator(catalog("so3"), 2) * Rational(-1, 12));
        CHECK(rho.apply(P("x1^2", 3)) == star_multiply(kontsevich("so3"), P("x1", 3), P("x1", 3)));

        // a cochain with a second derivative in the first slot after restriction is still fine,
        // but a first-slot term acting on constants is not
        BiDiffOperator odd(3);
        odd.add_term(MultiIndex(3), MultiIndex{1, 0, 0}, P("1", 3));
        const StarProduct broken({BiDiffOperator::multiplication(3), odd});
        CHECK_THROWS_AS(weyl_normalize(broken), NormalizationError);
    }

    TEST_CASE("closed form equivalence")
    {
        const EquivalenceOperator so3 = kontsevich_gutt_rho(catalog("so3"), 2, seed());
        REQUIRE(so3.exponent().size() == 1);
        CHECK(so3.exponent()[0].r == 2);
        CHECK(so3.exponent()[0].coefficient == Rational(-1, 12));
        CHECK(to_string(so3.term(2)) == "1/6*d1^2 + 1/6*d2^2 + 1/6*d3^2");
        CHECK(kontsevich_gutt_rho(catalog("heis3"), 4, seed()).is_identity());
        CHECK(kontsevich_gutt_rho(catalog("filiform4"), 4, seed()).is_identity());
        CHECK(to_string(kontsevich_gutt_rho(catalog("aff1"), 2, seed()).term(2)) == "-1/12*d1^2");
        CHECK_THROWS_AS(kontsevich_gutt_rho(catalog("aff1"), 3, seed()), MissingWeight);

        WeightTable t = seed();
        const WeightEstimate e = estimate_weight(wheel1(3), 20000, 1);
        t.set_estimate(wheel1(3), e);
        const EquivalenceOperator aff = kontsevich_gutt_rho(catalog("aff1"), 3, t);
        REQUIRE(aff.exponent().size() == 2);
        CHECK(aff.exponent()[1].r == 3);
        CHECK(aff.exponent()[1].op == DiffOperator::partial(MultiIndex{3, 0}));
        CHECK(aff.exponent()[1].estimated);
        CHECK(aff.estimated(3));
        CHECK_FALSE(aff.estimated(2));
    }

    TEST_CASE("equivalence verification")
    {
        for (const char *name : {"so3", "sl2", "heis3", "aff1"})
        {
            const EquivalenceReport r = verify_equivalence(catalog(name), 2, seed(), 10, 3);
            CHECK(r.ok());
            CHECK(r.exact);
            for (const Rational &d : r.max_defect)
                CHECK(d == 0);
        }
        CHECK(verify_equivalence(catalog("heis3"), 2, seed(), 2).rho_identity);
    }

    TEST_CASE("order three with estimated weights is tagged")
    {
        WeightTable t = seed();
        for (const GraphClass &c : graph_classes(3))
            if (!is_bad(c.representative) && !c.odd_automorphism && decompose(c.representative).size() < 2)
                t.set_estimate(c.representative, estimate_weight(c.representative, 2000, 5));
        const StarProduct k = assemble_kontsevich(poisson_tensor(catalog("so3")), 3, t);
        CHECK_FALSE(k.exact());
        CHECK(k.estimated(3));
        CHECK_FALSE(k.estimated(2));
        CHECK_THROWS_AS(assemble_kontsevich(poisson_tensor(catalog("so3")), 3, seed()), MissingWeight);
    }
}
