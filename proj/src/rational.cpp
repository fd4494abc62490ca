#include "starforge/rational.hpp"

#include <cctype>
#include <cmath>

#include "starforge/errors.hpp"

namespace starforge
{

Rational parse_rational(std::string_view text)
{
    std::size_t pos = 0;
    std::string buf;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
    {
        if (text[pos] == '-')
            buf.push_back('-');
        ++pos;
    }
    const std::size_t num_begin = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        buf.push_back(text[pos++]);
    if (pos == num_begin)
        throw ParseError(pos, "expected digits in rational literal");
    if (pos < text.size() && text[pos] == '/')
    {
        buf.push_back('/');
        ++pos;
        const std::size_t den_begin = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            buf.push_back(text[pos++]);
        if (pos == den_begin)
            throw ParseError(pos, "expected denominator digits");
        bool all_zero = true;
        for (std::size_t i = den_begin; i < pos; ++i)
            all_zero = all_zero && text[i] == '0';
        if (all_zero)
            throw ParseError(den_begin, "zero denominator");
    }
    if (pos != text.size())
        throw ParseError(pos, "trailing characters in rational literal");
    Rational q(buf, 10);
    q.canonicalize();
    return q;
}

Rational ratio(long p, long q)
{
    if (q == 0)
        throw InvalidArgument("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational &q)
{
    Rational c(q);
    c.canonicalize();
    return c.get_str(10);
}

Rational rational_from_double(double x)
{
    if (!std::isfinite(x))
        throw InvalidArgument("cannot convert non-finite double to rational");
    Rational q(x);
    q.canonicalize();
    return q;
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational falling_factorial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    mpz_class f = 1;
    for (unsigned i = 0; i < k; ++i)
        f *= n - i;
    return Rational(f);
}

Rational binomial(unsigned n, unsigned k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

} // namespace starforge
