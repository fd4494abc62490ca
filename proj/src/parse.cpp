#include "starforge/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "starforge/errors.hpp"

namespace starforge
{

namespace
{

class PolyParser
{
public:
    PolyParser(std::string_view text, std::size_t dim) : text_(text), dim_(dim) {}

    Polynomial parse()
    {
        Polynomial p = expression();
        skip_space();
        if (pos_ != text_.size())
            throw ParseError(pos_, std::string("unexpected character '") + text_[pos_] + "'");
        return p;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expression()
    {
        Polynomial p = term();
        while (true)
        {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                return p;
        }
    }

    Polynomial term()
    {
        Polynomial p = unary();
        while (accept('*'))
            p = p * unary();
        return p;
    }

    Polynomial unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    Polynomial power()
    {
        Polynomial base = primary();
        while (accept('^'))
        {
            skip_space();
            const std::size_t start = pos_;
            if (pos_ < text_.size() && text_[pos_] == '-')
                throw ParseError(pos_, "negative exponent");
            std::string digits = read_digits();
            if (digits.empty())
                throw ParseError(start, "expected exponent");
            if (digits.size() > 4)
                throw ParseError(start, "exponent too large");
            base = base.pow(std::stoi(digits));
        }
        return base;
    }

    std::string read_digits()
    {
        std::string d;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            d.push_back(text_[pos_++]);
        return d;
    }

    Polynomial primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError(pos_, "unexpected end of input");
        const std::size_t start = pos_;
        const char c = text_[pos_];
        if (c == '(')
        {
            ++pos_;
            Polynomial p = expression();
            if (!accept(')'))
                throw ParseError(pos_, "expected ')'");
            return p;
        }
        if (c == 'x')
        {
            ++pos_;
            std::string digits = read_digits();
            if (digits.empty())
                throw ParseError(pos_, "expected variable index after 'x'");
            if (digits.size() > 6)
                throw ParseError(start, "variable index too large");
            const std::size_t idx = std::stoul(digits);
            if (idx == 0 || idx > dim_)
                throw ParseError(start, "variable x" + digits + " out of range for dimension " + std::to_string(dim_));
            Polynomial p = Polynomial::variable(dim_, idx - 1);
            reject_implicit();
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
        {
            std::string literal = read_digits();
            if (pos_ < text_.size() && text_[pos_] == '/')
            {
                ++pos_;
                std::string den = read_digits();
                if (den.empty())
                    throw ParseError(pos_, "expected denominator");
                literal += "/" + den;
            }
            Rational q;
            try
            {
                q = parse_rational(literal);
            }
            catch (const ParseError &e)
            {
                throw ParseError(start + e.position, "bad rational literal");
            }
            reject_implicit();
            return Polynomial::constant(dim_, q);
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    // "2x1", "x1x2", "2 x1", "x1(x2)" would otherwise be ambiguous.
    void reject_implicit()
    {
        std::size_t p = pos_;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p])))
            ++p;
        if (p < text_.size() && (text_[p] == 'x' || text_[p] == '(' || std::isdigit(static_cast<unsigned char>(text_[p]))))
            throw ParseError(p, "implicit multiplication is not allowed");
    }

    std::string_view text_;
    std::size_t dim_;
    std::size_t pos_ = 0;
};

std::string monomial_text(const MultiIndex &m)
{
    std::string s;
    for (std::size_t i = 0; i < m.dim(); ++i)
    {
        if (m[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += "x" + std::to_string(i + 1);
        if (m[i] > 1)
            s += "^" + std::to_string(m[i]);
    }
    return s;
}

// Appends one signed term to `out`; `factor` is the non-numeric part.
void append_term(std::string &out, const Rational &c, const std::string &factor)
{
    const bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (out.empty())
        out += negative ? "-" : "";
    else
        out += negative ? " - " : " + ";
    if (factor.empty())
        out += to_string(mag);
    else if (mag == 1)
        out += factor;
    else
        out += to_string(mag) + "*" + factor;
}

} // namespace

Polynomial parse_poly(std::string_view text, std::size_t dim)
{
    if (dim == 0)
        throw InvalidArgument("polynomial dimension must be positive");
    return PolyParser(text, dim).parse();
}

std::string to_string(const Polynomial &p)
{
    std::string out;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        append_term(out, it->second, monomial_text(it->first));
    return out.empty() ? "0" : out;
}

std::string to_string(const HSeries &s)
{
    std::string out;
    for (unsigned r = 0; r <= s.order(); ++r)
    {
        std::string h;
        if (r == 1)
            h = "h";
        else if (r > 1)
            h = "h^" + std::to_string(r);
        const auto &terms = s[r].terms();
        for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        {
            std::string mono = monomial_text(it->first);
            std::string factor = h.empty() ? mono : (mono.empty() ? h : h + "*" + mono);
            append_term(out, it->second, factor);
        }
    }
    return out.empty() ? "0" : out;
}

} // namespace starforge
