#include "degsheffer/rational.hpp"

#include <ostream>
#include <stdexcept>

#include "degsheffer/errors.hpp"

namespace degsheffer {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
        s.remove_prefix(1);
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

mpz_class parse_integer(std::string_view s)
{
    if (!is_integer_literal(s))
        throw ParseError("not an integer: '" + std::string(s) + "'");
    if (s.front() == '+')
        s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

} // namespace

Rational::Rational(long num, long den)
{
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(num, 1);
    q_ /= den;
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text)
{
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(mpq_class(parse_integer(text)));
    const mpz_class num = parse_integer(text.substr(0, slash));
    const mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const
{
    if (is_integer())
        return numerator();
    return numerator() + "/" + denominator();
}

std::string Rational::to_fraction_string() const { return numerator() + "/" + denominator(); }

Rational& Rational::operator+=(const Rational& o)
{
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o)
{
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o)
{
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(mpq_class(f));
}

Rational binomial(unsigned n, unsigned k)
{
    if (k > n)
        return Rational();
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return Rational(mpq_class(c));
}

Rational pow(const Rational& base, unsigned exponent)
{
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get().get_den_mpz_t(), exponent);
    return Rational(mpq_class(num, den));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

} // namespace degsheffer
