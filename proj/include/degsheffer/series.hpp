#pragma once

#include <cstddef>
#include <vector>

#include "degsheffer/poly.hpp"

namespace degsheffer {

/// Truncation order used when a caller does not choose one.
inline constexpr std::size_t kDefaultOrder = 16;

/// Truncated formal power series in t with polynomial coefficients.
///
/// coeffs()[n] is the ordinary coefficient of t^n for n = 0..order(); the
/// exponential-generating-function convention lives only in egf_coefficient.
/// Binary arithmetic truncates to the smaller of the two orders.
class Series {
public:
    /// Requires a non-empty coefficient list.
    explicit Series(std::vector<Poly> coeffs);

    static Series constant(const Poly& c, std::size_t order);
    static Series zero(std::size_t order) { return constant(Poly(), order); }
    /// The series t (requires order >= 1 to be non-trivial).
    static Series t(std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    const Poly& operator[](std::size_t n) const { return coeffs_.at(n); }
    const std::vector<Poly>& coeffs() const noexcept { return coeffs_; }

    Series truncated(std::size_t order) const;

    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series operator-() const;
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);
    friend Series operator*(const Poly& c, Series s);
    friend Series operator*(Series s, const Poly& c) { return c * std::move(s); }

    /// Applies a substitution to every coefficient.
    Series substitute(const Assignment& assignments) const;

    friend bool operator==(const Series&, const Series&) = default;

private:
    std::vector<Poly> coeffs_;
};

/// Multiplicative inverse; the constant coefficient must be a nonzero rational.
Series reciprocal(const Series& f);
/// Logarithm of a series whose constant coefficient is 1.
Series log(const Series& f);
/// Exponential of a series whose constant coefficient is 0.
Series exp(const Series& u);
/// f^e realised as exp(e * log f); e may be any polynomial.
Series pow_symbolic(const Series& f, const Poly& e);
/// Coefficient n becomes c^n times coefficient n (the substitution t -> c t).
Series scale_t(const Series& f, const Poly& c);
/// f / t; requires a zero constant coefficient and lowers the order by one.
Series div_t(const Series& f);
/// t * f; raises the order by one.
Series mul_t(const Series& f);
/// n! times the ordinary coefficient of t^n.
Poly egf_coefficient(const Series& f, std::size_t n);

} // namespace degsheffer
