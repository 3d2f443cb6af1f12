#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "degsheffer/poly.hpp"
#include "degsheffer/series.hpp"

namespace degsheffer {

/// A random variable Y seen only through its degenerate moments
/// E[(Y)_{n,λ}], each an exact polynomial.
class MomentProvider {
public:
    struct Uniform01 {};
    struct Bernoulli {
        Poly p;
    };
    struct IidSum {
        std::shared_ptr<const MomentProvider> base;
        unsigned count;
    };
    struct Zero {};
    struct Custom {
        std::vector<Poly> moments;
    };
    using Kind = std::variant<Uniform01, Bernoulli, IidSum, Zero, Custom>;

    static MomentProvider uniform01();
    static MomentProvider bernoulli(Poly p);
    /// Y_1 + ... + Y_m for independent copies of base; m = 0 is the zero variable.
    static MomentProvider iid_sum(MomentProvider base, unsigned m);
    static MomentProvider zero();
    /// Explicit moment list; moments[0] must be 1.
    static MomentProvider custom(std::vector<Poly> moments);

    const Kind& kind() const noexcept { return kind_; }

    /// E[(Y)_{n,λ}]. Custom providers throw OrderExceeded past their list.
    Poly moment(std::size_t n) const;
    /// moment(0..max_n) in one pass.
    std::vector<Poly> moments_upto(std::size_t max_n) const;
    /// True when mc sampling is available (rational parameters only).
    bool samplable() const;
    std::string describe() const;

private:
    explicit MomentProvider(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

/// ∫_0^1 (y)_{n,λ} dy by termwise integration.
Poly moments_uniform01(std::size_t n);
/// (1-p) (0)_{n,λ} + p (1)_{n,λ}.
Poly moments_bernoulli(const Poly& p, std::size_t n);

/// E[e_λ^Y(t)] with ordinary coefficients moment(n) / n!.
Series mgf_series(const MomentProvider& provider, std::size_t order);

/// Moments of Y_1 + Y_2 for independent Y_1, Y_2, up to `order`, by the
/// binomial convolution of their falling moments.
MomentProvider independent_sum(const MomentProvider& first, const MomentProvider& second, std::size_t order);

/// Degenerate Sheffer polynomials attached to Y: EGF coefficients of
/// e_λ^x(t) / E[e_λ^Y(t)].
class ShefferY {
public:
    ShefferY(MomentProvider provider, std::size_t order);

    const MomentProvider& provider() const noexcept { return provider_; }
    std::size_t order() const noexcept { return order_; }
    const Series& inverse_mgf() const noexcept { return inverse_mgf_; }

private:
    MomentProvider provider_;
    std::size_t order_;
    Series inverse_mgf_;
};

Poly sheffer_poly(const ShefferY& sy, std::size_t n, const Poly& at);
std::vector<Poly> sheffer_table(const ShefferY& sy, std::size_t max_n, const Poly& at);

/// Coefficients c_k with p = sum_k c_k (v)_{k,λ}; each c_k is free of v.
std::vector<Poly> falling_basis_coeffs(const Poly& p, Var v);
/// sum_k coeffs[k] E[(Y)_{k,λ}].
Poly expect_falling_basis(const std::vector<Poly>& coeffs, const MomentProvider& provider);
/// E[p] where the variable v stands for Y.
Poly expect(const Poly& p, Var v, const MomentProvider& provider);

// ---------------------------------------------------------------------------
// Monte-Carlo cross-check

/// What to estimate: E[integrand(Y)] for Y drawn from `sampler`, compared
/// against an exactly known value. integrand is a polynomial in y only.
struct McTarget {
    std::string name;
    Poly integrand;
    MomentProvider sampler;
    Rational exact;
};

struct McEstimate {
    double estimate = 0;
    double std_error = 0;
    Rational exact;
    double z = 0;
    bool pass = false;
    std::uint64_t samples = 0;
};

/// E[S^Y_n(x+Y)] = (x)_{n,λ} at pinned λ and x.
McTarget thm31_target(const MomentProvider& provider, const Rational& lambda, const Rational& x, std::size_t n);
/// E[S^{Y^(m)}_n(x + Y^(l))] = E^{(m-l)}_{n,λ}(x) for Y ~ Ber(1/2); needs m >= l.
McTarget thm37_target(unsigned m, unsigned l, const Rational& lambda, const Rational& x, std::size_t n);
/// E[Y] against the exact first moment.
McTarget mean_target(const MomentProvider& provider);

/// Samples are split into fixed-size shards with seeds derived from `seed`
/// and shard index; shards are recombined in index order, so the result is
/// bit-identical for any worker count. The generator is std::mt19937_64.
McEstimate mc_estimate(const McTarget& target, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);

/// Acceptance threshold on |z|.
inline constexpr double kMcZThreshold = 3.0;
/// Samples per shard.
inline constexpr std::uint64_t kMcShardSize = 8192;

} // namespace degsheffer
