#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "degsheffer/errors.hpp"
#include "degsheffer/poly.hpp"

using namespace degsheffer;

namespace {

const Poly L = vars::lambda();
const Poly X = vars::x();
const Poly Y = vars::y();

// Small random polynomials over a few variables with small rational coefficients.
class PolyGen {
public:
    explicit PolyGen(unsigned seed) : rng_(seed) {}

    Poly operator()()
    {
        std::uniform_int_distribution<int> nterms(0, 4), coeff(-5, 5), den(1, 4), ex(0, 2), var(0, 3);
        Poly p;
        const int n = nterms(rng_);
        for (int i = 0; i < n; ++i) {
            Monomial m;
            for (int j = 0; j < 2; ++j)
                m[static_cast<Var>(var(rng_))] += static_cast<std::uint16_t>(ex(rng_));
            p += Poly::monomial(Rational(coeff(rng_), den(rng_)), m);
        }
        return p;
    }

private:
    std::mt19937 rng_;
};

} // namespace

TEST(Rational, CanonicalForm)
{
    EXPECT_EQ(Rational(2, 4).to_string(), "1/2");
    EXPECT_EQ(Rational(3, -6).to_string(), "-1/2");
    EXPECT_EQ(Rational(0, 7).to_fraction_string(), "0/1");
    EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
    EXPECT_EQ(Rational::parse("12"), Rational(12));
    EXPECT_EQ(Rational::parse("4/-8"), Rational(-1, 2));
    EXPECT_THROW(Rational::parse("1/0"), ParseError);
    EXPECT_THROW(Rational::parse("x"), ParseError);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, BigValuesStayExact)
{
    const Rational f = factorial(40);
    EXPECT_EQ(f.to_string(), "815915283247897734345611269596115894272000000000");
    EXPECT_EQ(binomial(60, 30).to_string(), "118264581564861424");
    EXPECT_EQ((f / factorial(39)), Rational(40));
}

TEST(Poly, MulExpandsFallingFactorial)
{
    const Poly p = X * (X - L) * (X - L * Rational(2));
    EXPECT_EQ(p, X.pow(3) - Rational(3) * L * X.pow(2) + Rational(2) * L.pow(2) * X);
    EXPECT_EQ(p.to_string(), "x^3 - 3*λ*x^2 + 2*λ^2*x");
}

TEST(Poly, ScalarEdgeCases)
{
    EXPECT_EQ(Poly(Rational(1, 2)) * Poly(2), Poly(1));
    EXPECT_TRUE((L * Poly(0)).is_zero());
    EXPECT_EQ(Poly().to_string(), "0");
}

TEST(Poly, SerializationMatchesCanonicalOrder)
{
    const Poly beta4 = Poly(Rational(-19, 30)) * L.pow(4) + Poly(Rational(2, 3)) * L.pow(2) - Poly(Rational(1, 30));
    EXPECT_EQ(beta4.to_string(), "-19/30*λ^4 + 2/3*λ^2 - 1/30");
    EXPECT_EQ(beta4.to_latex(), "-\\frac{19}{30}\\lambda^{4} + \\frac{2}{3}\\lambda^{2} - \\frac{1}{30}");
    EXPECT_EQ(Poly::parse(beta4.to_string()), beta4);
}

TEST(Poly, ParseGeneralExpressions)
{
    EXPECT_EQ(Poly::parse("(x+1)^2"), Poly::parse("x^2 + 2*x + 5 - 4"));
    EXPECT_EQ(Poly::parse("lambda*x - l*y"), L * X - L * Y);
    EXPECT_EQ(Poly::parse("-x^2"), -(X * X));
    EXPECT_EQ(Poly::parse("3/4"), Poly(Rational(3, 4)));
    EXPECT_THROW(Poly::parse("x +"), ParseError);
    EXPECT_THROW(Poly::parse("q"), ParseError);
    EXPECT_THROW(Poly::parse("(x"), ParseError);
}

TEST(Poly, SubstituteExamples)
{
    const Poly beta2 = Poly(Rational(1, 6)) - Poly(Rational(1, 6)) * L.pow(2);
    EXPECT_EQ(beta2.substitute({{Var::lambda, Poly(0)}}), Poly(Rational(1, 6)));

    const Poly fall2 = X * X - L * X;
    const Poly halved = fall2.substitute({{Var::lambda, L * Rational(1, 2)}, {Var::x, X * Rational(1, 2)}});
    EXPECT_EQ(halved, Poly(Rational(1, 4)) * X * X - Poly(Rational(1, 4)) * L * X);

    const Poly beta1x = X - Poly(Rational(1, 2)) + L * Rational(1, 2);
    EXPECT_EQ(beta1x.substitute({{Var::x, Poly(0)}}), Poly(Rational(-1, 2)) + L * Rational(1, 2));
}

TEST(Poly, SubstitutionIsSimultaneous)
{
    // x -> y, y -> x swaps rather than collapsing.
    const Poly p = X * X + Y;
    EXPECT_EQ(p.substitute({{Var::x, Y}, {Var::y, X}}), Y * Y + X);
}

TEST(Poly, EvalExamples)
{
    const Poly beta2 = Poly(Rational(1, 6)) - Poly(Rational(1, 6)) * L.pow(2);
    EXPECT_EQ(beta2.eval({{Var::lambda, Rational(1)}}), Rational(0));
    const Poly beta1x = X - Poly(Rational(1, 2)) + L * Rational(1, 2);
    EXPECT_EQ(beta1x.eval({{Var::x, Rational(1, 2)}, {Var::lambda, Rational(0)}}), Rational(0));
    EXPECT_EQ(Poly(1).eval({}), Rational(1));
    EXPECT_THROW(beta1x.eval({{Var::x, Rational(1)}}), UnboundVariable);
}

TEST(Poly, CoefficientsAndDivision)
{
    const Poly p = L * X * X + Poly(3) * X + L;
    const auto c = p.coefficients_in(Var::x);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0], L);
    EXPECT_EQ(c[1], Poly(3));
    EXPECT_EQ(c[2], L);
    EXPECT_EQ((L * X + L.pow(3)).divide_by_var(Var::lambda), X + L * L);
    EXPECT_THROW(p.divide_by_var(Var::lambda), std::domain_error);
}

TEST(PolyProperty, RingAxioms)
{
    PolyGen gen(1234);
    for (int i = 0; i < 200; ++i) {
        const Poly p = gen(), q = gen(), r = gen();
        EXPECT_EQ(p * q, q * p);
        EXPECT_EQ(p + q, q + p);
        EXPECT_EQ((p * q) * r, p * (q * r));
        EXPECT_EQ((p + q) + r, p + (q + r));
        EXPECT_EQ(p * (q + r), p * q + p * r);
        EXPECT_TRUE((p - p).is_zero());
    }
}

TEST(PolyProperty, SubstituteIsRingHomomorphism)
{
    PolyGen gen(99);
    for (int i = 0; i < 100; ++i) {
        const Poly p = gen(), q = gen();
        const Assignment sigma{{Var::x, gen()}, {Var::lambda, gen()}};
        EXPECT_EQ((p * q).substitute(sigma), p.substitute(sigma) * q.substitute(sigma));
        EXPECT_EQ((p + q).substitute(sigma), p.substitute(sigma) + q.substitute(sigma));
        const Assignment identity{{Var::x, X}, {Var::y, Y}, {Var::lambda, L}};
        EXPECT_EQ(p.substitute(identity), p);
    }
}

TEST(PolyProperty, ConstructionOrderIsIrrelevant)
{
    PolyGen gen(7);
    for (int i = 0; i < 100; ++i) {
        const Poly p = gen();
        std::vector<Term> terms(p.terms().begin(), p.terms().end());
        std::shuffle(terms.begin(), terms.end(), std::mt19937(static_cast<unsigned>(i)));
        // Split each coefficient in two so from_terms has to merge.
        std::vector<Term> split;
        for (const auto& [m, c] : terms) {
            split.emplace_back(m, c * Rational(1, 3));
            split.emplace_back(m, c * Rational(2, 3));
        }
        EXPECT_EQ(Poly::from_terms(split), p);
        EXPECT_EQ(Poly::parse(p.to_string()), p);
    }
}
