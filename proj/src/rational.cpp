#include "cmh/rational.hpp"

#include <cctype>

#include "cmh/error.hpp"

namespace cmh {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty())
        return false;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        return false;
    for (std::size_t k = start; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    if (s[0] == '+')
        s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    if (!is_integer_literal(num))
        throw Error(ErrorKind::Parse, "not a rational literal: '" + std::string(text) + "'");
    Integer p = parse_integer(num);
    Integer q = 1;
    if (slash != std::string_view::npos) {
        std::string_view den = text.substr(slash + 1);
        if (!is_integer_literal(den) || den[0] == '-' || den[0] == '+')
            throw Error(ErrorKind::Parse, "bad denominator in '" + std::string(text) + "'");
        q = parse_integer(den);
        if (q == 0)
            throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    }
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& q)
{
    return q.get_str();
}

std::string to_string(const Integer& z)
{
    return z.get_str();
}

Integer floor(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer round(const Rational& q)
{
    Rational half(1, 2);
    return q >= 0 ? floor(q + half) : -floor(-q + half);
}

Rational abs(const Rational& q)
{
    return q < 0 ? Rational(-q) : q;
}

Integer abs(const Integer& z)
{
    return z < 0 ? Integer(-z) : z;
}

Integer gcd(const Integer& a, const Integer& b)
{
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b)
{
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

Integer common_denominator(const std::vector<Rational>& values)
{
    Integer d = 1;
    for (const auto& v : values)
        d = lcm(d, v.get_den());
    return d;
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b)
{
    ExtendedGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

}  // namespace cmh
