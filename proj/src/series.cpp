#include "degsheffer/series.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "degsheffer/errors.hpp"

namespace degsheffer {

Series::Series(std::vector<Poly> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw std::invalid_argument("series needs at least a constant coefficient");
}

Series Series::constant(const Poly& c, std::size_t order)
{
    std::vector<Poly> v(order + 1);
    v[0] = c;
    return Series(std::move(v));
}

Series Series::t(std::size_t order)
{
    std::vector<Poly> v(order + 1);
    if (order >= 1)
        v[1] = Poly(1);
    return Series(std::move(v));
}

Series Series::truncated(std::size_t order) const
{
    if (order >= this->order())
        return *this;
    return Series(std::vector<Poly>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order) + 1));
}

Series& Series::operator+=(const Series& o)
{
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    return *this;
}

Series& Series::operator-=(const Series& o)
{
    coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    return *this;
}

Series Series::operator-() const
{
    Series r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

Series operator*(const Series& a, const Series& b)
{
    const std::size_t order = std::min(a.order(), b.order());
    std::vector<Poly> out(order + 1);
    for (std::size_t n = 0; n <= order; ++n)
        for (std::size_t k = 0; k <= n; ++k)
            if (!a.coeffs_[k].is_zero() && !b.coeffs_[n - k].is_zero())
                out[n] += a.coeffs_[k] * b.coeffs_[n - k];
    return Series(std::move(out));
}

Series operator*(const Poly& c, Series s)
{
    for (auto& coeff : s.coeffs_)
        coeff = c * coeff;
    return s;
}

Series Series::substitute(const Assignment& assignments) const
{
    Series r = *this;
    for (auto& c : r.coeffs_)
        c = c.substitute(assignments);
    return r;
}

Series reciprocal(const Series& f)
{
    const auto c0 = f[0].constant_value();
    if (!c0 || c0->is_zero())
        throw NonUnitConstantTerm("reciprocal needs an invertible rational constant term, got " + f[0].to_string());
    const Rational inv = Rational(1) / *c0;
    std::vector<Poly> g(f.order() + 1);
    g[0] = Poly(inv);
    for (std::size_t n = 1; n <= f.order(); ++n) {
        Poly acc;
        for (std::size_t k = 1; k <= n; ++k)
            if (!f[k].is_zero())
                acc += f[k] * g[n - k];
        g[n] = acc * (-inv);
    }
    return Series(std::move(g));
}

Series log(const Series& f)
{
    if (!(f[0] == Poly(1)))
        throw NonUnitConstantTerm("log needs constant term 1, got " + f[0].to_string());
    // Equate coefficients in L' F = F':  n F_n = sum_{k=1}^{n} k L_k F_{n-k}.
    std::vector<Poly> l(f.order() + 1);
    for (std::size_t n = 1; n <= f.order(); ++n) {
        Poly acc = f[n] * Rational(static_cast<long>(n));
        for (std::size_t k = 1; k < n; ++k)
            if (!l[k].is_zero() && !f[n - k].is_zero())
                acc -= l[k] * f[n - k] * Rational(static_cast<long>(k));
        l[n] = acc * Rational(1, static_cast<long>(n));
    }
    return Series(std::move(l));
}

Series exp(const Series& u)
{
    if (!u[0].is_zero())
        throw NonzeroConstantTerm("exp needs a zero constant term, got " + u[0].to_string());
    // G' = u' G:  n G_n = sum_{k=1}^{n} k u_k G_{n-k}.
    std::vector<Poly> g(u.order() + 1);
    g[0] = Poly(1);
    for (std::size_t n = 1; n <= u.order(); ++n) {
        Poly acc;
        for (std::size_t k = 1; k <= n; ++k)
            if (!u[k].is_zero())
                acc += u[k] * g[n - k] * Rational(static_cast<long>(k));
        g[n] = acc * Rational(1, static_cast<long>(n));
    }
    return Series(std::move(g));
}

Series pow_symbolic(const Series& f, const Poly& e)
{
    if (e.is_zero()) {
        if (!(f[0] == Poly(1)))
            throw NonUnitConstantTerm("symbolic power needs constant term 1, got " + f[0].to_string());
        return Series::constant(Poly(1), f.order());
    }
    return exp(e * log(f));
}

Series scale_t(const Series& f, const Poly& c)
{
    std::vector<Poly> out(f.coeffs());
    Poly power(1);
    for (std::size_t n = 1; n < out.size(); ++n) {
        power *= c;
        out[n] = out[n] * power;
    }
    return Series(std::move(out));
}

Series div_t(const Series& f)
{
    if (!f[0].is_zero())
        throw NonzeroConstantTerm("div_t needs a zero constant term, got " + f[0].to_string());
    if (f.order() == 0)
        throw OrderExceeded("div_t of an order-0 series has no coefficients left");
    return Series(std::vector<Poly>(f.coeffs().begin() + 1, f.coeffs().end()));
}

Series mul_t(const Series& f)
{
    std::vector<Poly> out;
    out.reserve(f.order() + 2);
    out.emplace_back();
    out.insert(out.end(), f.coeffs().begin(), f.coeffs().end());
    return Series(std::move(out));
}

Poly egf_coefficient(const Series& f, std::size_t n)
{
    if (n > f.order())
        throw OrderExceeded("coefficient " + std::to_string(n) + " requested from a series of order " +
                            std::to_string(f.order()));
    return f[n] * factorial(static_cast<unsigned>(n));
}

} // namespace degsheffer
