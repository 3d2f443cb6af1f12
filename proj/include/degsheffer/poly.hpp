#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "degsheffer/rational.hpp"

namespace degsheffer {

/// Indeterminates, in their fixed canonical order (lambda is the smallest).
enum class Var : std::uint8_t { lambda, x, y, a, b, p };

inline constexpr std::size_t kVarCount = 6;
inline constexpr std::array<Var, kVarCount> kAllVars{Var::lambda, Var::x, Var::y,
                                                     Var::a,      Var::b, Var::p};

std::string_view var_name(Var v) noexcept;
std::string_view var_latex(Var v) noexcept;
/// Accepts the display name and ASCII aliases ("lambda", "l" for λ).
std::optional<Var> parse_var(std::string_view name) noexcept;

/// Dense exponent vector over the variable registry.
struct Monomial {
    std::array<std::uint16_t, kVarCount> exp{};

    unsigned degree() const noexcept;
    std::uint16_t operator[](Var v) const noexcept { return exp[static_cast<std::size_t>(v)]; }
    std::uint16_t& operator[](Var v) noexcept { return exp[static_cast<std::size_t>(v)]; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Graded lexicographic comparison; among equal total degree, the exponent of
/// the largest variable (p) decides first.
bool grlex_less(const Monomial& a, const Monomial& b) noexcept;

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept;
};

using Term = std::pair<Monomial, Rational>;
using Assignment = std::map<Var, class Poly>;
using Point = std::map<Var, Rational>;

/// Multivariate polynomial over Q in the registry variables.
///
/// Terms are kept sorted by descending grlex and never carry a zero
/// coefficient, so two polynomials are mathematically equal exactly when
/// their term vectors are equal.
class Poly {
public:
    Poly() = default;
    Poly(long c) : Poly(Rational(c)) {}
    Poly(const Rational& c);

    static Poly var(Var v);
    static Poly monomial(const Rational& c, const Monomial& m);
    /// Builds from arbitrary (possibly repeated, unsorted, zero) terms.
    static Poly from_terms(std::vector<Term> terms);
    /// Parses the textual form produced by to_string(), and more generally any
    /// expression built from rationals, variables, + - * ^ and parentheses.
    static Poly parse(std::string_view text);

    std::span<const Term> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Value of a constant polynomial, nullopt otherwise.
    std::optional<Rational> constant_value() const;
    Rational constant_term() const;
    unsigned degree() const noexcept;
    unsigned degree_in(Var v) const noexcept;
    bool contains(Var v) const noexcept { return degree_in(v) > 0; }

    /// Coefficients c_k (polynomials free of v) with p = sum_k c_k v^k.
    std::vector<Poly> coefficients_in(Var v) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    Poly operator-() const;

    Poly pow(unsigned exponent) const;
    /// Exact division by a single variable; throws std::domain_error if some
    /// term is not divisible.
    Poly divide_by_var(Var v) const;

    /// Simultaneous substitution; unassigned variables are left alone.
    Poly substitute(const Assignment& assignments) const;
    /// Throws UnboundVariable if a variable of p has no value in point.
    Rational eval(const Point& point) const;

    std::string to_string() const;
    std::string to_latex() const;

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Named shorthands for the registry variables.
namespace vars {
inline Poly lambda() { return Poly::var(Var::lambda); }
inline Poly x() { return Poly::var(Var::x); }
inline Poly y() { return Poly::var(Var::y); }
inline Poly a() { return Poly::var(Var::a); }
inline Poly b() { return Poly::var(Var::b); }
inline Poly p() { return Poly::var(Var::p); }
} // namespace vars

} // namespace degsheffer
