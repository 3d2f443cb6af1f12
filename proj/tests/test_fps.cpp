#include <gtest/gtest.h>

#include "degsheffer/errors.hpp"
#include "degsheffer/families.hpp"
#include "degsheffer/series.hpp"

using namespace degsheffer;

namespace {

const Poly L = vars::lambda();
const Poly X = vars::x();
const Poly A = vars::a();
const Poly B = vars::b();

Series poly_series(std::initializer_list<Poly> c, std::size_t order)
{
    std::vector<Poly> v(c);
    v.resize(order + 1);
    return Series(v);
}

Series one_plus_t(std::size_t order) { return Series::constant(Poly(1), order) + Series::t(order); }

// (1+t)^e coefficients C(e, n) = e(e-1)...(e-n+1)/n!, the binomial-series oracle.
Poly binomial_series_coeff(const Poly& e, std::size_t n)
{
    Poly c(1);
    for (std::size_t j = 0; j < n; ++j)
        c *= e - Poly(static_cast<long>(j));
    return c * (Rational(1) / factorial(static_cast<unsigned>(n)));
}

} // namespace

TEST(Series, CauchyProduct)
{
    const Series f = one_plus_t(6);
    const Series g = Series::constant(Poly(1), 6) - Series::t(6);
    const Series prod = f * g;
    EXPECT_EQ(prod[0], Poly(1));
    EXPECT_EQ(prod[1], Poly(0));
    EXPECT_EQ(prod[2], Poly(-1));
    for (std::size_t n = 3; n <= 6; ++n)
        EXPECT_TRUE(prod[n].is_zero());
}

TEST(Series, DegenerateExponentialAddition)
{
    const Poly Y = vars::y();
    const Series prod = deg_exponential(X, 5) * deg_exponential(Y, 5);
    EXPECT_EQ(prod[2], falling_lambda(X + Y, 2) * Rational(1, 2));
    EXPECT_EQ(prod, deg_exponential(X + Y, 5));
}

TEST(Series, MixedOrderTruncatesToSmaller)
{
    const Series s = deg_exponential(X, 7) * deg_exponential(X, 3);
    EXPECT_EQ(s.order(), 3u);
    EXPECT_EQ((one_plus_t(2) + one_plus_t(9)).order(), 2u);
}

TEST(Series, Reciprocal)
{
    const Series r = reciprocal(one_plus_t(6));
    for (std::size_t n = 0; n <= 6; ++n)
        EXPECT_EQ(r[n], Poly(n % 2 ? -1 : 1));
    const Series f = deg_exponential(X, 6) + Series::constant(Poly(2), 6);
    EXPECT_EQ(f * reciprocal(f), Series::constant(Poly(1), 6));
    EXPECT_EQ(reciprocal(reciprocal(f)), f);
}

TEST(Series, ReciprocalOfEulerDenominator)
{
    // (e_λ(t) + 1) / 2
    const Series half = Poly(Rational(1, 2)) * (deg_exponential(Poly(1), 5) + Series::constant(Poly(1), 5));
    EXPECT_EQ(egf_coefficient(reciprocal(half), 1), Poly(Rational(-1, 2)));
}

TEST(Series, ReciprocalRejectsNonUnit)
{
    EXPECT_THROW(reciprocal(Series::t(3)), NonUnitConstantTerm);
    EXPECT_THROW(reciprocal(Series::constant(X, 3)), NonUnitConstantTerm);
}

TEST(Series, LogOfOnePlusT)
{
    const Series l = log(one_plus_t(8));
    EXPECT_TRUE(l[0].is_zero());
    for (std::size_t n = 1; n <= 8; ++n)
        EXPECT_EQ(l[n], Poly(Rational(n % 2 ? 1 : -1, static_cast<long>(n))));
}

TEST(Series, LogOfDegenerateExponential)
{
    // Oracle: log e_λ(t) = (1/λ) log(1+λt), i.e. coefficient (-1)^{n+1} λ^{n-1} / n.
    const Series l = log(deg_exponential(Poly(1), 8));
    for (std::size_t n = 1; n <= 8; ++n) {
        const Poly expected =
            Poly(Rational(n % 2 ? 1 : -1, static_cast<long>(n))) * L.pow(static_cast<unsigned>(n - 1));
        EXPECT_EQ(l[n], expected) << "n=" << n;
    }
    EXPECT_THROW(log(Series::constant(Poly(2), 3)), NonUnitConstantTerm);
}

TEST(Series, Exp)
{
    const Series e = exp(Series::t(8));
    for (std::size_t n = 0; n <= 8; ++n)
        EXPECT_EQ(e[n], Poly(Rational(1) / factorial(static_cast<unsigned>(n))));
    EXPECT_EQ(exp(log(one_plus_t(8))), one_plus_t(8));
    EXPECT_THROW(exp(one_plus_t(3)), NonzeroConstantTerm);
}

TEST(Series, ExpOfSymbolicLogIsBinomialSeries)
{
    const Series s = exp(A * log(one_plus_t(7)));
    for (std::size_t n = 0; n <= 7; ++n)
        EXPECT_EQ(s[n], binomial_series_coeff(A, n)) << "n=" << n;
}

TEST(Series, PowSymbolic)
{
    const Series f = deg_exponential(Poly(1), 6) + Series::t(6) * Series::constant(X, 6);
    EXPECT_EQ(pow_symbolic(f, Poly(1)), f);
    EXPECT_EQ(pow_symbolic(f, Poly(0)), Series::constant(Poly(1), 6));
    // (e_λ(t) - 1)/t = 1 + (1-λ)t/2 + O(t^2), so its inverse to the power a
    // starts 1 - a(1-λ)t/2.
    const Series base = bernoulli_base(4);
    EXPECT_EQ(pow_symbolic(base, A)[1], A * (Poly(1) - L) * Rational(-1, 2));
}

TEST(SeriesProperty, PowerLaws)
{
    const Series f = bernoulli_base(6) * deg_exponential(X, 6);
    EXPECT_EQ(pow_symbolic(f, A) * pow_symbolic(f, B), pow_symbolic(f, A + B));
    for (long k = 2; k <= 3; ++k)
        EXPECT_EQ(pow_symbolic(pow_symbolic(f, A), Poly(k)), pow_symbolic(f, A * Poly(k)));
}

TEST(SeriesProperty, IntegerPowerMatchesRepeatedProduct)
{
    const Series f = euler_base(7) * deg_exponential(X, 7);
    Series product = Series::constant(Poly(1), 7);
    for (long k = 1; k <= 4; ++k) {
        product = product * f;
        EXPECT_EQ(pow_symbolic(f, Poly(k)), product) << "k=" << k;
    }
    EXPECT_EQ(pow_symbolic(f, Poly(-1)), reciprocal(f));
}

TEST(SeriesProperty, ExpLogInverse)
{
    for (std::size_t order : {1u, 4u, 9u}) {
        const Series f = euler_base(order) * deg_exponential(X, order);
        EXPECT_EQ(exp(log(f)), f);
        const Series u = mul_t(Series::constant(A, order - 1) + deg_exponential(L, order - 1));
        EXPECT_EQ(log(exp(u)), u);
    }
}

TEST(Series, ScaleT)
{
    EXPECT_EQ(scale_t(one_plus_t(3), Poly(2)), poly_series({Poly(1), Poly(2)}, 3));
    const Series s = scale_t(exp(Series::t(5)), L);
    for (std::size_t n = 0; n <= 5; ++n)
        EXPECT_EQ(s[n], L.pow(static_cast<unsigned>(n)) * (Rational(1) / factorial(static_cast<unsigned>(n))));
}

TEST(Series, ScaleTReproducesHalvedBernoulliGeneratingFunction)
{
    // Substituting λ -> λ/2, x -> x/2 and then t -> 2t gives coefficients
    // 2^n β_{n,λ/2}(x/2).
    const Assignment halve{{Var::lambda, L * Rational(1, 2)}, {Var::x, X * Rational(1, 2)}};
    const Series scaled = scale_t(bernoulli_gf(Poly(1), X, 6).substitute(halve), Poly(2));
    for (std::size_t n = 0; n <= 6; ++n)
        EXPECT_EQ(egf_coefficient(scaled, n),
                  bernoulli_deg(n, X).substitute(halve) * pow(Rational(2), static_cast<unsigned>(n)));
}

TEST(Series, DivAndMulT)
{
    const Series e1 = deg_exponential(Poly(1), 5) - Series::constant(Poly(1), 5);
    const Series d = degsheffer::div_t(e1);
    EXPECT_EQ(d.order(), 4u);
    EXPECT_EQ(d[0], Poly(1));
    EXPECT_EQ(mul_t(d), e1);
    EXPECT_THROW(degsheffer::div_t(one_plus_t(3)), NonzeroConstantTerm);
}

TEST(Series, EgfCoefficient)
{
    EXPECT_EQ(egf_coefficient(deg_exponential(X, 4), 2), X * X - L * X);
    EXPECT_EQ(egf_coefficient(bernoulli_gf(Poly(1), Poly(), 4), 2),
              Poly(Rational(1, 6)) - Poly(Rational(1, 6)) * L * L);
    const Series f = deg_exponential(X, 4) + Series::constant(Poly(3), 4);
    EXPECT_EQ(egf_coefficient(f, 0), f[0]);
    EXPECT_THROW(egf_coefficient(f, 5), OrderExceeded);
}
