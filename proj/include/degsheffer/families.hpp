#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "degsheffer/poly.hpp"
#include "degsheffer/series.hpp"

namespace degsheffer {

enum class FamilyId {
    FallingLambda,
    DegBernoulli,
    DegEuler,
    HigherBernoulli,
    HigherEuler,
    ShefferT,
    Stirling1,
};

inline constexpr FamilyId kAllFamilies[] = {
    FamilyId::FallingLambda,   FamilyId::DegBernoulli, FamilyId::DegEuler, FamilyId::HigherBernoulli,
    FamilyId::HigherEuler,     FamilyId::ShefferT,     FamilyId::Stirling1,
};

/// CLI name, e.g. "deg-bernoulli".
std::string_view family_name(FamilyId id) noexcept;
std::optional<FamilyId> parse_family(std::string_view name) noexcept;

/// (base)_{n,λ} = base (base - λ) ... (base - (n-1)λ); 1 for n = 0.
Poly falling_lambda(const Poly& base, std::size_t n);

/// e_λ^{base}(t), i.e. ordinary coefficients (base)_{n,λ} / n!.
Series deg_exponential(const Poly& base, std::size_t order);

/// t / (e_λ(t) - 1).
Series bernoulli_base(std::size_t order);
/// 2 / (e_λ(t) + 1).
Series euler_base(std::size_t order);

/// Generating functions. An order of exactly 1 uses the base series
/// directly; any other order goes through the symbolic power.
Series bernoulli_gf(const Poly& order_param, const Poly& at, std::size_t order);
Series euler_gf(const Poly& order_param, const Poly& at, std::size_t order);
Series sheffer_t_gf(const Poly& ord_a, const Poly& ord_b, const Poly& at, std::size_t order);

/// EGF coefficients 0..max_n of a series.
std::vector<Poly> egf_table(const Series& f, std::size_t max_n);

// Point evaluations. Each checks n against `limit` (the configured
// truncation order) and throws OrderExceeded when n is larger.
Poly bernoulli_deg(std::size_t n, const Poly& at, std::size_t limit = kDefaultOrder);
Poly euler_deg(std::size_t n, const Poly& at, std::size_t limit = kDefaultOrder);
Poly bernoulli_higher(std::size_t n, const Poly& order_param, const Poly& at, std::size_t limit = kDefaultOrder);
Poly euler_higher(std::size_t n, const Poly& order_param, const Poly& at, std::size_t limit = kDefaultOrder);
Poly sheffer_T(std::size_t n, const Poly& ord_a, const Poly& ord_b, const Poly& at,
               std::size_t limit = kDefaultOrder);

/// Degenerate Bernoulli numbers from the umbral recurrence
/// (β+1)_{n,λ} - β_{n,λ} = δ_{n,1}, never touching the series code.
Poly bernoulli_deg_rec(std::size_t n);
/// Degenerate Euler numbers from (E+1)_{n,λ} + E_{n,λ} = 2 δ_{n,0}.
Poly euler_deg_rec(std::size_t n);

/// Signed Stirling numbers of the first kind from the triangular recurrence.
/// Throws IndexOutOfRange unless k <= n.
Rational stirling1(std::size_t n, std::size_t k);
/// Same numbers read off n! [t^n] log^k(1+t)/k!.
Rational stirling1_via_series(std::size_t n, std::size_t k);

} // namespace degsheffer
