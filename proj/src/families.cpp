#include "degsheffer/families.hpp"

#include <map>
#include <mutex>
#include <string>

#include "degsheffer/errors.hpp"

namespace degsheffer {

namespace {

constexpr std::string_view kFamilyNames[] = {
    "falling-lambda", "deg-bernoulli", "deg-euler", "higher-bernoulli", "higher-euler", "sheffer-t", "stirling1",
};

void check_limit(std::size_t n, std::size_t limit)
{
    if (n > limit)
        throw OrderExceeded("index " + std::to_string(n) + " exceeds truncation order " + std::to_string(limit));
}

// Memo of a series keyed by truncation order; a longer cached series serves
// shorter requests by truncation.
class SeriesMemo {
public:
    template <class Build>
    Series get(std::size_t order, Build build)
    {
        std::lock_guard lock(mu_);
        auto it = cache_.lower_bound(order);
        if (it != cache_.end())
            return it->second.truncated(order);
        return cache_.emplace(order, build(order)).first->second;
    }

private:
    std::mutex mu_;
    std::map<std::size_t, Series> cache_;
};

SeriesMemo& bernoulli_base_memo()
{
    static SeriesMemo memo;
    return memo;
}

SeriesMemo& euler_base_memo()
{
    static SeriesMemo memo;
    return memo;
}

SeriesMemo& bernoulli_log_memo()
{
    static SeriesMemo memo;
    return memo;
}

SeriesMemo& euler_log_memo()
{
    static SeriesMemo memo;
    return memo;
}

Series power_of_base(const Series& base, const Series& log_base, const Poly& e)
{
    if (e == Poly(1))
        return base;
    if (e.is_zero())
        return Series::constant(Poly(1), base.order());
    return exp(e * log_base);
}

} // namespace

std::string_view family_name(FamilyId id) noexcept { return kFamilyNames[static_cast<std::size_t>(id)]; }

std::optional<FamilyId> parse_family(std::string_view name) noexcept
{
    for (FamilyId id : kAllFamilies)
        if (family_name(id) == name)
            return id;
    return std::nullopt;
}

Poly falling_lambda(const Poly& base, std::size_t n)
{
    const Poly lambda = vars::lambda();
    Poly result(1);
    for (std::size_t j = 0; j < n; ++j)
        result *= base - lambda * Rational(static_cast<long>(j));
    return result;
}

Series deg_exponential(const Poly& base, std::size_t order)
{
    const Poly lambda = vars::lambda();
    std::vector<Poly> coeffs(order + 1);
    Poly falling(1);
    coeffs[0] = falling;
    for (std::size_t n = 1; n <= order; ++n) {
        falling *= base - lambda * Rational(static_cast<long>(n - 1));
        coeffs[n] = falling * (Rational(1) / factorial(static_cast<unsigned>(n)));
    }
    return Series(std::move(coeffs));
}

Series bernoulli_base(std::size_t order)
{
    return bernoulli_base_memo().get(order, [](std::size_t n) {
        const Series e = deg_exponential(Poly(1), n + 1);
        return reciprocal(div_t(e - Series::constant(Poly(1), n + 1)));
    });
}

Series euler_base(std::size_t order)
{
    return euler_base_memo().get(order, [](std::size_t n) {
        const Series e = deg_exponential(Poly(1), n);
        return Rational(2) * reciprocal(e + Series::constant(Poly(1), n));
    });
}

Series bernoulli_gf(const Poly& order_param, const Poly& at, std::size_t order)
{
    const Series base = bernoulli_base(order);
    const Series lg = bernoulli_log_memo().get(order, [](std::size_t n) { return log(bernoulli_base(n)); });
    return power_of_base(base, lg, order_param) * deg_exponential(at, order);
}

Series euler_gf(const Poly& order_param, const Poly& at, std::size_t order)
{
    const Series base = euler_base(order);
    const Series lg = euler_log_memo().get(order, [](std::size_t n) { return log(euler_base(n)); });
    return power_of_base(base, lg, order_param) * deg_exponential(at, order);
}

Series sheffer_t_gf(const Poly& ord_a, const Poly& ord_b, const Poly& at, std::size_t order)
{
    const Series bl = bernoulli_log_memo().get(order, [](std::size_t n) { return log(bernoulli_base(n)); });
    const Series el = euler_log_memo().get(order, [](std::size_t n) { return log(euler_base(n)); });
    const Series bpow = power_of_base(bernoulli_base(order), bl, ord_a);
    const Series epow = power_of_base(euler_base(order), el, ord_b);
    return bpow * epow * deg_exponential(at, order);
}

std::vector<Poly> egf_table(const Series& f, std::size_t max_n)
{
    std::vector<Poly> out;
    out.reserve(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n)
        out.push_back(egf_coefficient(f, n));
    return out;
}

Poly bernoulli_deg(std::size_t n, const Poly& at, std::size_t limit)
{
    check_limit(n, limit);
    return egf_coefficient(bernoulli_gf(Poly(1), at, n), n);
}

Poly euler_deg(std::size_t n, const Poly& at, std::size_t limit)
{
    check_limit(n, limit);
    return egf_coefficient(euler_gf(Poly(1), at, n), n);
}

Poly bernoulli_higher(std::size_t n, const Poly& order_param, const Poly& at, std::size_t limit)
{
    check_limit(n, limit);
    return egf_coefficient(bernoulli_gf(order_param, at, n), n);
}

Poly euler_higher(std::size_t n, const Poly& order_param, const Poly& at, std::size_t limit)
{
    check_limit(n, limit);
    return egf_coefficient(euler_gf(order_param, at, n), n);
}

Poly sheffer_T(std::size_t n, const Poly& ord_a, const Poly& ord_b, const Poly& at, std::size_t limit)
{
    check_limit(n, limit);
    return egf_coefficient(sheffer_t_gf(ord_a, ord_b, at, n), n);
}

namespace {

// Numbers defined by sum_{k=0}^{n} C(n,k) u_k (1)_{n-k,λ} + sign * u_n = rhs(n).
// With sign = -1 the u_n terms cancel and equation n+1 determines u_n through
// its k = n term; with sign = +1 equation n determines u_n directly.
class UmbralMemo {
public:
    UmbralMemo(int sign, long delta_index, long delta_value)
        : sign_(sign), delta_index_(delta_index), delta_value_(delta_value)
    {
    }

    Poly get(std::size_t n)
    {
        std::lock_guard lock(mu_);
        while (values_.size() <= n)
            values_.push_back(next(values_.size()));
        return values_[n];
    }

private:
    int sign_;
    long delta_index_;
    long delta_value_;
    std::mutex mu_;
    std::vector<Poly> values_;
    std::vector<Poly> ones_;  // (1)_{j,λ}

    const Poly& one_falling(std::size_t j)
    {
        while (ones_.size() <= j)
            ones_.push_back(falling_lambda(Poly(1), ones_.size()));
        return ones_[j];
    }

    Poly next(std::size_t m)
    {
        const std::size_t eq = sign_ < 0 ? m + 1 : m;
        const auto rhs = static_cast<long>(eq) == delta_index_ ? delta_value_ : 0L;
        Poly acc(rhs);
        for (std::size_t k = 0; k < m; ++k)
            acc -= values_[k] * one_falling(eq - k) * binomial(static_cast<unsigned>(eq), static_cast<unsigned>(k));
        // Coefficient of u_m: C(eq, m) (1)_{eq-m,λ} + sign * [eq == m].
        const Rational lead = sign_ < 0 ? binomial(static_cast<unsigned>(eq), static_cast<unsigned>(m))
                                        : Rational(1 + sign_);
        return acc * (Rational(1) / lead);
    }
};

UmbralMemo& bernoulli_rec_memo()
{
    static UmbralMemo memo(-1, 1, 1);
    return memo;
}

UmbralMemo& euler_rec_memo()
{
    static UmbralMemo memo(+1, 0, 2);
    return memo;
}

class StirlingMemo {
public:
    Rational get(std::size_t n, std::size_t k)
    {
        std::lock_guard lock(mu_);
        if (rows_.empty())
            rows_.push_back({Rational(1)});
        while (rows_.size() <= n) {
            const std::size_t m = rows_.size() - 1;  // extend row m to row m+1
            const auto& prev = rows_.back();
            std::vector<Rational> row(m + 2);
            for (std::size_t j = 0; j <= m + 1; ++j) {
                Rational v;
                if (j >= 1)
                    v += prev[j - 1];
                if (j <= m)
                    v -= prev[j] * Rational(static_cast<long>(m));
                row[j] = v;
            }
            rows_.push_back(std::move(row));
        }
        return rows_[n][k];
    }

private:
    std::mutex mu_;
    std::vector<std::vector<Rational>> rows_;
};

} // namespace

Poly bernoulli_deg_rec(std::size_t n) { return bernoulli_rec_memo().get(n); }

Poly euler_deg_rec(std::size_t n) { return euler_rec_memo().get(n); }

Rational stirling1(std::size_t n, std::size_t k)
{
    if (k > n)
        throw IndexOutOfRange("stirling1 needs k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    static StirlingMemo memo;
    return memo.get(n, k);
}

Rational stirling1_via_series(std::size_t n, std::size_t k)
{
    if (k > n)
        throw IndexOutOfRange("stirling1 needs k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
    const Series l = log(Series::constant(Poly(1), n) + Series::t(n));
    Series power = Series::constant(Poly(1), n);
    for (std::size_t j = 0; j < k; ++j)
        power = power * l;
    const Poly c = egf_coefficient(power, n) * (Rational(1) / factorial(static_cast<unsigned>(k)));
    return c.constant_term();
}

} // namespace degsheffer
