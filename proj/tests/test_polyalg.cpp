#include <doctest.h>

#include "helpers.hpp"
#include "starforge/errors.hpp"
#include "starforge/operators.hpp"
#include "starforge/parse.hpp"

using namespace starforge;
using starforge::test::P;

TEST_SUITE("polyalg")
{
    TEST_CASE("rationals")
    {
        CHECK(parse_rational("-6/4") == Rational(-3, 2));
        CHECK(to_string(Rational(4, 2)) == "2");
        CHECK(to_string(Rational(-1, 3)) == "-1/3");
        CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
        CHECK_THROWS_AS(parse_rational("abc"), ParseError);
        CHECK(rational_from_double(0.375) == Rational(3, 8));
        CHECK(factorial(5u) == 120);
        CHECK(falling_factorial(5, 2) == 20);
        CHECK(falling_factorial(2, 3) == 0);
        CHECK(binomial(6, 2) == 15);
    }

    TEST_CASE("multi-index order is graded lex")
    {
        CHECK(MultiIndex{0, 0, 2} > MultiIndex{1, 0, 0});
        CHECK(MultiIndex{1, 1, 0} > MultiIndex{1, 0, 1});
        CHECK(MultiIndex{2, 0, 0} > MultiIndex{0, 2, 0});
        const std::vector<unsigned> letters{0, 0, 2};
        CHECK(MultiIndex::from_letters(3, letters) == MultiIndex{2, 0, 1});
        CHECK(MultiIndex{2, 0, 1}.letters() == letters);
    }

    TEST_CASE("arithmetic")
    {
        CHECK(P("x1*x2", 2).derivative(0) == P("x2", 2));
        CHECK(P("x1", 2).derivative(1).is_zero());
        CHECK(P("x1 + x2", 2).pow(2) == P("x1^2 + 2*x1*x2 + x2^2", 2));
        CHECK(P("x1^3", 1).derivative(MultiIndex{2}) == P("6*x1", 1));
        CHECK((P("x1 - x2", 2) * P("x1 + x2", 2)) == P("x1^2 - x2^2", 2));
        CHECK((P("x1", 2) - P("x1", 2)).is_zero());
        CHECK(P("x1^2*x2 + 3", 2).degree() == 3);
        CHECK(Polynomial(2).degree() == -1);
        CHECK(P("x1 + 2*x2", 2).linear_coefficients() == std::vector<Rational>{1, 2});
        CHECK_THROWS(P("x1 + 1", 2).linear_coefficients());
        const std::vector<Rational> pt{2, Rational(1, 2)};
        CHECK(P("x1^2*x2 - x2", 2).evaluate(pt) == Rational(3, 2));
        CHECK_THROWS_AS(P("x1", 2) + P("x1", 3), DimensionMismatch);
    }

    TEST_CASE("parse")
    {
        CHECK(P("x1*x2 + 1/2*x3^2", 3).size() == 2);
        CHECK(P("2*(x1 - x2)^2", 2) == P("2*x1^2 - 4*x1*x2 + 2*x2^2", 2));
        CHECK(P("-(x1)", 1) == Polynomial::variable(1, 0) * Rational(-1));
        CHECK(P("0", 2).is_zero());
        CHECK_THROWS_AS(P("x4", 3), ParseError);
        CHECK_THROWS_AS(P("2x1", 2), ParseError);
        CHECK_THROWS_AS(P("x1 x2", 2), ParseError);
        CHECK_THROWS_AS(P("(x1", 2), ParseError);
        CHECK_THROWS_AS(P("x1^-1", 2), ParseError);
        try
        {
            P("x1 + x9", 3);
            FAIL("expected a parse error");
        }
        catch (const ParseError &e)
        {
            CHECK(e.position == 5);
        }
    }

    TEST_CASE("canonical text round trips")
    {
        for (const char *text : {"x1*x2 + 1/2*x3^2", "-x1^3 + x2 - 7/3", "x3^2 - 1/3*x1 - 1/3*x2", "0"})
        {
            const Polynomial p = P(text, 3);
            CHECK(to_string(p) == text);
            CHECK(P(to_string(p), 3) == p);
        }
    }

    TEST_CASE("series")
    {
        HSeries s(P("x1", 2), 2);
        s[1] = P("x2", 2);
        HSeries t(P("1", 2), 1);
        t[1] = P("x1", 2);
        const HSeries st = s * t;
        CHECK(st.order() == 1);
        CHECK(st[0] == P("x1", 2));
        CHECK(st[1] == P("x2 + x1^2", 2));
        CHECK(to_string(s) == "x1 + h*x2");
        HSeries u(2, 2);
        u[0] = P("x1^2", 2);
        u[2] = P("1/3", 2);
        CHECK(to_string(u) == "x1^2 + 1/3*h^2");
        CHECK(s.truncated(0).order() == 0);
        CHECK(s.extended(4).order() == 4);
    }

    TEST_CASE("differential operators")
    {
        const DiffOperator d11 = DiffOperator::partial(MultiIndex{2, 0});
        CHECK(d11.apply(P("x1^3", 2)) == P("6*x1", 2));
        const Polynomial f = P("x1^2*x2 - 3*x2", 2);
        CHECK(DiffOperator::identity(2).apply(f) == f);
        // (x1 d1) o (x1 d1) = x1 d1 + x1^2 d1^2
        DiffOperator e(2);
        e.add_term(MultiIndex{1, 0}, P("x1", 2));
        DiffOperator e2(2);
        e2.add_term(MultiIndex{1, 0}, P("x1", 2));
        e2.add_term(MultiIndex{2, 0}, P("x1^2", 2));
        CHECK(e.compose(e) == e2);
        CHECK(e.compose(e).apply(f) == e.apply(e.apply(f)));
        CHECK(d11.is_constant_coefficient());
        CHECK_FALSE(e.is_constant_coefficient());
        CHECK(d11.is_homogeneous(2));
        CHECK(to_string(DiffOperator::partial(MultiIndex{2, 0}, Rational(1, 6))) == "1/6*d1^2");
        CHECK(to_string(DiffOperator::identity(2)) == "1");
        CHECK(DiffOperator::partial(MultiIndex{1, 1}, 3).symbol() == P("3*x1*x2", 2));
    }

    TEST_CASE("bidifferential operators")
    {
        const PoissonTensor so3 = poisson_tensor(catalog("so3"));
        const BiDiffOperator pi = so3.bracket_operator();
        CHECK(pi.apply(P("x1", 3), P("x2", 3)) == P("x3", 3));
        CHECK(pi.apply(P("1", 3), P("x1^2*x3", 3)).is_zero());
        CHECK(pi.vanishes_on_constants());
        CHECK(to_string(pi).find("x3*d1(f)*d2(g)") != std::string::npos);

        const BiDiffOperator m = BiDiffOperator::multiplication(3);
        CHECK(m.apply(P("x1 + 1", 3), P("x2", 3)) == P("x1*x2 + x2", 3));
        CHECK_FALSE(m.vanishes_on_constants());

        const Polynomial f = P("x1^2*x2", 3), g = P("x3^2 + x1", 3);
        CHECK(pi.transposed().apply(f, g) == pi.apply(g, f));
        const DiffOperator d = DiffOperator::partial(MultiIndex{1, 0, 0});
        CHECK(pi.compose_second(d).apply(f, g) == pi.apply(f, d.apply(g)));
        CHECK(pi.compose_first(d).apply(f, g) == pi.apply(d.apply(f), g));
        CHECK(juxtapose(pi, m).apply(f, g) == pi.apply(f, g));
    }

    TEST_CASE("hochschild coboundary")
    {
        CHECK(hochschild_coboundary(DiffOperator::partial(MultiIndex{1, 0, 0})).is_zero());
        CHECK(hochschild_coboundary(DiffOperator(3)).is_zero());
        const BiDiffOperator b = hochschild_coboundary(DiffOperator::partial(MultiIndex{2, 0, 0}));
        CHECK(b.apply(P("x1", 3), P("x1", 3)) == P("-2", 3));
        // delta of d1^2 is -2 d1 (x) d1
        BiDiffOperator expect(3);
        expect.add_term(MultiIndex{1, 0, 0}, MultiIndex{1, 0, 0}, P("-2", 3));
        CHECK(b == expect);
    }
}
