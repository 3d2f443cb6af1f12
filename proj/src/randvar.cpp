#include "degsheffer/randvar.hpp"

#include <string>

#include "degsheffer/errors.hpp"
#include "degsheffer/families.hpp"

namespace degsheffer {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

// Falling moments of Y + Z from those of independent Y and Z.
std::vector<Poly> convolve_moments(const std::vector<Poly>& y, const std::vector<Poly>& z)
{
    const std::size_t max_n = std::min(y.size(), z.size()) - 1;
    std::vector<Poly> out(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n)
        for (std::size_t k = 0; k <= n; ++k)
            out[n] += y[k] * z[n - k] * binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
    return out;
}

} // namespace

MomentProvider MomentProvider::uniform01() { return MomentProvider(Uniform01{}); }

MomentProvider MomentProvider::bernoulli(Poly p) { return MomentProvider(Bernoulli{std::move(p)}); }

MomentProvider MomentProvider::iid_sum(MomentProvider base, unsigned m)
{
    return MomentProvider(IidSum{std::make_shared<const MomentProvider>(std::move(base)), m});
}

MomentProvider MomentProvider::zero() { return MomentProvider(Zero{}); }

MomentProvider MomentProvider::custom(std::vector<Poly> moments)
{
    if (moments.empty() || !(moments.front() == Poly(1)))
        throw BadParams("custom moment list must start with E[(Y)_0] = 1");
    return MomentProvider(Custom{std::move(moments)});
}

Poly MomentProvider::moment(std::size_t n) const
{
    if (const auto* c = std::get_if<Custom>(&kind_)) {
        if (n >= c->moments.size())
            throw OrderExceeded("custom provider has " + std::to_string(c->moments.size()) + " moments, asked for " +
                                std::to_string(n));
        return c->moments[n];
    }
    return moments_upto(n)[n];
}

std::vector<Poly> MomentProvider::moments_upto(std::size_t max_n) const
{
    return std::visit(overloaded{
                          [&](const Uniform01&) {
                              std::vector<Poly> out;
                              for (std::size_t n = 0; n <= max_n; ++n)
                                  out.push_back(moments_uniform01(n));
                              return out;
                          },
                          [&](const Bernoulli& b) {
                              std::vector<Poly> out;
                              for (std::size_t n = 0; n <= max_n; ++n)
                                  out.push_back(moments_bernoulli(b.p, n));
                              return out;
                          },
                          [&](const IidSum& s) {
                              std::vector<Poly> acc(max_n + 1);
                              acc[0] = Poly(1);
                              if (s.count == 0)
                                  return acc;
                              const auto base = s.base->moments_upto(max_n);
                              acc = base;
                              for (unsigned j = 1; j < s.count; ++j)
                                  acc = convolve_moments(acc, base);
                              return acc;
                          },
                          [&](const Zero&) {
                              std::vector<Poly> out(max_n + 1);
                              out[0] = Poly(1);
                              return out;
                          },
                          [&](const Custom& c) {
                              if (max_n >= c.moments.size())
                                  throw OrderExceeded("custom provider has " + std::to_string(c.moments.size()) +
                                                      " moments, asked for " + std::to_string(max_n));
                              return std::vector<Poly>(c.moments.begin(),
                                                       c.moments.begin() + static_cast<std::ptrdiff_t>(max_n) + 1);
                          },
                      },
                      kind_);
}

bool MomentProvider::samplable() const
{
    return std::visit(overloaded{
                          [](const Uniform01&) { return true; },
                          [](const Bernoulli& b) {
                              const auto p = b.p.constant_value();
                              return p && p->sign() >= 0 && *p <= Rational(1);
                          },
                          [](const IidSum& s) { return s.base->samplable(); },
                          [](const Zero&) { return true; },
                          [](const Custom&) { return false; },
                      },
                      kind_);
}

std::string MomentProvider::describe() const
{
    return std::visit(overloaded{
                          [](const Uniform01&) { return std::string("uniform01"); },
                          [](const Bernoulli& b) { return "bernoulli(" + b.p.to_string() + ")"; },
                          [](const IidSum& s) {
                              return "iid_sum(" + s.base->describe() + ", " + std::to_string(s.count) + ")";
                          },
                          [](const Zero&) { return std::string("zero"); },
                          [](const Custom& c) { return "custom[" + std::to_string(c.moments.size()) + "]"; },
                      },
                      kind_);
}

Poly moments_uniform01(std::size_t n)
{
    const auto coeffs = falling_lambda(vars::y(), n).coefficients_in(Var::y);
    Poly sum;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        sum += coeffs[j] * Rational(1, static_cast<long>(j + 1));
    return sum;
}

Poly moments_bernoulli(const Poly& p, std::size_t n)
{
    if (n == 0)
        return Poly(1);
    return p * falling_lambda(Poly(1), n);
}

Series mgf_series(const MomentProvider& provider, std::size_t order)
{
    auto moments = provider.moments_upto(order);
    for (std::size_t n = 0; n <= order; ++n)
        moments[n] *= Rational(1) / factorial(static_cast<unsigned>(n));
    return Series(std::move(moments));
}

MomentProvider independent_sum(const MomentProvider& first, const MomentProvider& second, std::size_t order)
{
    return MomentProvider::custom(convolve_moments(first.moments_upto(order), second.moments_upto(order)));
}

ShefferY::ShefferY(MomentProvider provider, std::size_t order)
    : provider_(std::move(provider)), order_(order), inverse_mgf_(reciprocal(mgf_series(provider_, order)))
{
}

Poly sheffer_poly(const ShefferY& sy, std::size_t n, const Poly& at)
{
    if (n > sy.order())
        throw OrderExceeded("S_n requested at n=" + std::to_string(n) + " beyond order " + std::to_string(sy.order()));
    return egf_coefficient(sy.inverse_mgf().truncated(n) * deg_exponential(at, n), n);
}

std::vector<Poly> sheffer_table(const ShefferY& sy, std::size_t max_n, const Poly& at)
{
    if (max_n > sy.order())
        throw OrderExceeded("S_n requested up to n=" + std::to_string(max_n) + " beyond order " +
                            std::to_string(sy.order()));
    return egf_table(sy.inverse_mgf().truncated(max_n) * deg_exponential(at, max_n), max_n);
}

std::vector<Poly> falling_basis_coeffs(const Poly& p, Var v)
{
    const unsigned top = p.degree_in(v);
    std::vector<Poly> out(top + 1);
    Poly rest = p;
    for (unsigned d = top; d > 0; --d) {
        const auto by_power = rest.coefficients_in(v);
        if (by_power.size() <= d)
            continue;
        out[d] = by_power[d];
        rest -= by_power[d] * falling_lambda(Poly::var(v), d);
    }
    out[0] = rest;
    return out;
}

Poly expect_falling_basis(const std::vector<Poly>& coeffs, const MomentProvider& provider)
{
    if (coeffs.empty())
        return Poly();
    const auto moments = provider.moments_upto(coeffs.size() - 1);
    Poly sum;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (!coeffs[k].is_zero())
            sum += coeffs[k] * moments[k];
    return sum;
}

Poly expect(const Poly& p, Var v, const MomentProvider& provider)
{
    return expect_falling_basis(falling_basis_coeffs(p, v), provider);
}

} // namespace degsheffer
