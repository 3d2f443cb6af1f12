#include "degsheffer/identities.hpp"

#include <algorithm>
#include <future>

#include "degsheffer/errors.hpp"
#include "degsheffer/families.hpp"
#include "degsheffer/randvar.hpp"

namespace degsheffer {

namespace {

using Table = std::vector<Poly>;

Rational C(std::size_t n, std::size_t k) { return binomial(static_cast<unsigned>(n), static_cast<unsigned>(k)); }

Rational R(long v) { return Rational(v); }

const Poly kX = vars::x();
const Poly kY = vars::y();
const Poly kA = vars::a();
const Poly kB = vars::b();
const Poly kP = vars::p();
const Poly kLambda = vars::lambda();

Table bern(const Poly& alpha, const Poly& at, std::size_t n) { return egf_table(bernoulli_gf(alpha, at, n), n); }
Table eul(const Poly& alpha, const Poly& at, std::size_t n) { return egf_table(euler_gf(alpha, at, n), n); }
Table shef(const Poly& a, const Poly& b, const Poly& at, std::size_t n)
{
    return egf_table(sheffer_t_gf(a, b, at, n), n);
}
Table falling(const Poly& at, std::size_t n)
{
    Table out;
    for (std::size_t k = 0; k <= n; ++k)
        out.push_back(falling_lambda(at, k));
    return out;
}

// sum_{k=0}^{n} C(n,k) f[k] g[n-k]
Poly conv(const Table& f, const Table& g, std::size_t n)
{
    Poly sum;
    for (std::size_t k = 0; k <= n; ++k)
        sum += f[k] * g[n - k] * C(n, k);
    return sum;
}

// t[n-1], with negative indices contributing zero.
const Poly& prev(const Table& t, std::size_t n)
{
    static const Poly zero;
    return n == 0 ? zero : t[n - 1];
}

Evaluation per_n(std::size_t max_n, const std::function<std::vector<Instance>(std::size_t)>& f)
{
    Evaluation ev;
    ev.reserve(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n)
        ev.push_back(f(n));
    return ev;
}

std::vector<Instance> one(Poly lhs, Poly rhs) { return {Instance{"", std::move(lhs), std::move(rhs)}}; }

// Weight C(n,k) / C(n-k+m, m) λ^{n-k} S_1(n-k+m, m) appearing in the i.i.d.
// uniform expansions.
Poly stirling_weight(std::size_t n, std::size_t k, unsigned m)
{
    const std::size_t j = n - k;
    return Poly(C(n, k) / C(j + m, m) * stirling1(j + m, m)) * kLambda.pow(static_cast<unsigned>(j));
}

Poly sum_over_k_with_weight(std::size_t n, unsigned m, const Table& family)
{
    Poly sum;
    for (std::size_t k = 0; k <= n; ++k)
        sum += stirling_weight(n, k, m) * family[k];
    return sum;
}

// ---------------------------------------------------------------------------
// Higher-order families

Evaluation prop21(std::size_t N, bool bernoulli)
{
    auto make = [&](const Poly& o, const Poly& at) { return bernoulli ? bern(o, at, N) : eul(o, at, N); };
    const Table lhs = make(kA + kB, kX + kY);
    const Table fx = make(kA, kX);
    const Table fy = make(kB, kY);
    return per_n(N, [&](std::size_t n) { return one(lhs[n], conv(fx, fy, n)); });
}

Evaluation cor22(std::size_t N, bool bernoulli)
{
    auto make = [&](const Poly& o, const Poly& at) { return bernoulli ? bern(o, at, N) : eul(o, at, N); };
    const Table lhs = make(kA, kX + kY);
    const Table fx = make(kA, kX);
    const Table fy = falling(kY, N);
    return per_n(N, [&](std::size_t n) { return one(lhs[n], conv(fx, fy, n)); });
}

Evaluation thm23_bernoulli(std::size_t N)
{
    const Table shifted = bern(kA, kX + Poly(1), N);
    const Table base = bern(kA, kX, N);
    const Table lower = bern(kA - Poly(1), kX, N);
    return per_n(N, [&](std::size_t n) {
        return one(shifted[n] - base[n], prev(lower, n) * R(static_cast<long>(n)));
    });
}

Evaluation thm23_euler(std::size_t N)
{
    const Table shifted = eul(kA, kX + Poly(1), N);
    const Table base = eul(kA, kX, N);
    const Table lower = eul(kA - Poly(1), kX, N);
    return per_n(N, [&](std::size_t n) { return one(shifted[n] + base[n], lower[n] * R(2)); });
}

Evaluation thm24(std::size_t N)
{
    const Table bx = bern(Poly(1), kX, N);
    const Table b0 = bern(Poly(1), Poly(), N);
    const Table ex = eul(Poly(1), kX, N);
    return per_n(N, [&](std::size_t n) {
        return one(bx[n], prev(ex, n) * Rational(static_cast<long>(n), 2) + conv(b0, ex, n));
    });
}

// ---------------------------------------------------------------------------
// Sheffer-type hybrid T^{(a,b)}

Evaluation prop_t_add(std::size_t N)
{
    const Table lhs = shef(kA, kB, kX + kY, N);
    const Table bx = bern(kA, kX, N);
    const Table ey = eul(kB, kY, N);
    return per_n(N, [&](std::size_t n) { return one(lhs[n], conv(bx, ey, n)); });
}

Evaluation prop_t_expand(std::size_t N)
{
    const Table tx = shef(kA, kB, kX, N);
    const Table t0 = shef(kA, kB, Poly(), N);
    const Table fx = falling(kX, N);
    return per_n(N, [&](std::size_t n) { return one(tx[n], conv(t0, fx, n)); });
}

Evaluation thm_t_two_expansions(std::size_t N)
{
    const Table tx = shef(kA, kB, kX, N);
    const Table t0_a = shef(kA - Poly(1), kB, Poly(), N);
    const Table t0_b = shef(kA, kB - Poly(1), Poly(), N);
    const Table bx = bern(Poly(1), kX, N);
    const Table ex = eul(Poly(1), kX, N);
    return per_n(N, [&](std::size_t n) {
        return std::vector<Instance>{
            {"via-bernoulli", tx[n], conv(t0_a, bx, n)},
            {"via-euler", tx[n], conv(t0_b, ex, n)},
        };
    });
}

Evaluation thm27(std::size_t N)
{
    const Table b0 = bern(Poly(1), Poly(), N);
    const Table ex = eul(Poly(1), kX, N);
    const Assignment halve{{Var::lambda, kLambda * Rational(1, 2)}, {Var::x, kX * Rational(1, 2)}};
    const Table bx = bern(Poly(1), kX, N);
    // Same left side through the series route: scale t -> 2t after halving.
    const Series scaled = scale_t(bernoulli_gf(Poly(1), kX, N).substitute(halve), Poly(2));
    return per_n(N, [&](std::size_t n) {
        const Poly rhs = conv(b0, ex, n);
        const Poly by_subst = bx[n].substitute(halve) * pow(Rational(2), static_cast<unsigned>(n));
        return std::vector<Instance>{
            {"substitution", by_subst, rhs},
            {"scaled-series", egf_coefficient(scaled, n), rhs},
        };
    });
}

Evaluation thm28(std::size_t N)
{
    const Table shifted = shef(kA, kB, kX + Poly(1), N);
    const Table base = shef(kA, kB, kX, N);
    const Table lower = shef(kA - Poly(1), kB, kX, N);
    return per_n(N, [&](std::size_t n) {
        return one(shifted[n] - base[n], prev(lower, n) * R(static_cast<long>(n)));
    });
}

Evaluation thm38(std::size_t N)
{
    const Table lhs = shef(kA, kB - Poly(1), kX, N);
    const Table shifted = shef(kA, kB, kX + Poly(1), N);
    const Table base = shef(kA, kB, kX, N);
    return per_n(N, [&](std::size_t n) { return one(lhs[n], (shifted[n] + base[n]) * Rational(1, 2)); });
}

Evaluation thm39(std::size_t N)
{
    const Table lhs = shef(kA, kB, kX, N);
    const Table b_lower = shef(kA, kB - Poly(1), kX, N);
    const Table a_lower = shef(kA - Poly(1), kB, kX, N);
    return per_n(N, [&](std::size_t n) {
        return one(lhs[n], b_lower[n] - prev(a_lower, n) * Rational(static_cast<long>(n), 2));
    });
}

Evaluation thm310(std::size_t N)
{
    const Table ba = bern(kA, kX, N);
    const Table ba1 = bern(kA - Poly(1), kX, N);
    const Table eb = eul(kB, kY, N);
    const Table eb1 = eul(kB - Poly(1), kY, N);
    return per_n(N, [&](std::size_t n) {
        Poly rhs;
        for (std::size_t k = 0; k <= n; ++k) {
            const Poly bracket = ba[k] + prev(ba1, k) * Rational(static_cast<long>(k), 2);
            rhs += bracket * eb[n - k] * C(n, k);
        }
        return one(conv(ba, eb1, n), rhs);
    });
}

Evaluation thm311_bernoulli(std::size_t N)
{
    const Table lhs = bern(kA, kX + kY, N);
    const Table ba = bern(kA, kX, N);
    const Table ba1 = bern(kA - Poly(1), kX, N);
    const Table ey = eul(Poly(1), kY, N);
    return per_n(N, [&](std::size_t n) {
        Poly rhs;
        for (std::size_t k = 0; k <= n; ++k) {
            const Poly bracket = ba[k] + prev(ba1, k) * Rational(static_cast<long>(k), 2);
            rhs += bracket * ey[n - k] * C(n, k);
        }
        return one(lhs[n], rhs);
    });
}

Evaluation thm311_euler(std::size_t N)
{
    const Table lhs = eul(kB, kX + kY, N);
    const Table bx = bern(Poly(1), kX, N + 1);
    const Table eb = eul(kB, kY, N + 1);
    const Table eb1 = eul(kB - Poly(1), kY, N + 1);
    return per_n(N, [&](std::size_t n) {
        Poly rhs;
        for (std::size_t k = 0; k <= n; ++k)
            rhs += bx[n - k] * (eb1[k + 1] - eb[k + 1]) * (C(n, k) * Rational(2, static_cast<long>(k + 1)));
        return one(lhs[n], rhs);
    });
}

// ---------------------------------------------------------------------------
// Random-variable identities

struct NamedProvider {
    std::string label;
    MomentProvider provider;
};

MomentProvider uniform() { return MomentProvider::uniform01(); }
MomentProvider ber_half() { return MomentProvider::bernoulli(Poly(Rational(1, 2))); }
MomentProvider ber_p() { return MomentProvider::bernoulli(kP); }

Evaluation thm31(std::size_t N)
{
    const std::vector<NamedProvider> providers{{"U[0,1]", uniform()}, {"Ber(1/2)", ber_half()}, {"Ber(p)", ber_p()}};
    std::vector<Table> lhs;
    for (const auto& np : providers) {
        const Table shifted = sheffer_table(ShefferY(np.provider, N), N, kX + kY);
        Table e;
        for (const auto& s : shifted)
            e.push_back(expect(s, Var::y, np.provider));
        lhs.push_back(std::move(e));
    }
    const Table fx = falling(kX, N);
    return per_n(N, [&](std::size_t n) {
        std::vector<Instance> out;
        for (std::size_t i = 0; i < providers.size(); ++i)
            out.push_back({providers[i].label, lhs[i][n], fx[n]});
        return out;
    });
}

Evaluation thm32(std::size_t N)
{
    struct Pair {
        std::string label;
        MomentProvider first, second;
    };
    const std::vector<Pair> pairs{
        {"U[0,1]+Ber(1/2)", uniform(), ber_half()},
        {"Ber(p)+U[0,1]", ber_p(), uniform()},
        {"Ber(1/2)+Ber(p)", ber_half(), ber_p()},
    };
    struct Tables {
        Table lhs, s1, s2;
    };
    std::vector<Tables> tabs;
    for (const auto& pr : pairs) {
        const auto sum = independent_sum(pr.first, pr.second, N);
        tabs.push_back({sheffer_table(ShefferY(sum, N), N, kX + kY), sheffer_table(ShefferY(pr.first, N), N, kX),
                        sheffer_table(ShefferY(pr.second, N), N, kY)});
    }
    // Special case Y_2 = 0, y = 0.
    const std::vector<NamedProvider> singles{{"U[0,1]", uniform()}, {"Ber(p)", ber_p()}};
    struct Special {
        Table sx, s0;
    };
    std::vector<Special> specials;
    for (const auto& np : singles) {
        const ShefferY sy(np.provider, N);
        specials.push_back({sheffer_table(sy, N, kX), sheffer_table(sy, N, Poly())});
    }
    const Table fx = falling(kX, N);
    return per_n(N, [&](std::size_t n) {
        std::vector<Instance> out;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            out.push_back({pairs[i].label, tabs[i].lhs[n], conv(tabs[i].s1, tabs[i].s2, n)});
        for (std::size_t i = 0; i < singles.size(); ++i)
            out.push_back({singles[i].label + ",Y2=0", specials[i].sx[n], conv(specials[i].s0, fx, n)});
        return out;
    });
}

Evaluation thm33(std::size_t N)
{
    const Table s = sheffer_table(ShefferY(uniform(), N), N, kX);
    const Table bx = bern(Poly(1), kX, N);
    return per_n(N, [&](std::size_t n) {
        Poly rhs;
        for (std::size_t k = 0; k <= n; ++k) {
            const std::size_t j = n - k;
            const Rational w = C(n, k) * factorial(static_cast<unsigned>(j)) / Rational(static_cast<long>(j + 1));
            rhs += bx[k] * (-kLambda).pow(static_cast<unsigned>(j)) * w;
        }
        return one(s[n], rhs);
    });
}

Evaluation thm34(std::size_t N)
{
    const Table s = sheffer_table(ShefferY(ber_half(), N), N, kX);
    const Table ex = eul(Poly(1), kX, N);
    return per_n(N, [&](std::size_t n) { return one(s[n], ex[n]); });
}

Evaluation thm35(std::size_t N)
{
    const std::vector<unsigned> ms{1, 2, 3};
    std::vector<Table> lhs, fam;
    for (unsigned m : ms) {
        lhs.push_back(sheffer_table(ShefferY(MomentProvider::iid_sum(uniform(), m), N), N, kX));
        fam.push_back(bern(Poly(static_cast<long>(m)), kX, N));
    }
    return per_n(N, [&](std::size_t n) {
        std::vector<Instance> out;
        for (std::size_t i = 0; i < ms.size(); ++i)
            out.push_back({"m=" + std::to_string(ms[i]), lhs[i][n], sum_over_k_with_weight(n, ms[i], fam[i])});
        return out;
    });
}

const std::vector<std::pair<unsigned, unsigned>> kMlPairs{{2, 1}, {3, 1}, {3, 2}};

std::string ml_label(unsigned m, unsigned l) { return "m=" + std::to_string(m) + ",l=" + std::to_string(l); }

Evaluation thm36(std::size_t N)
{
    struct Tabs {
        Table expected_family;  // E[β^{(m)}_k(x + Y^{(l)})]
        Table lower_family;     // β^{(m-l)}_k(x)
        Table eq35_lhs;         // E[S^{Y^(m)}_n(x + Y^(l))]
        Table eq35_rhs;         // S^{Y^(m-l)}_n(x)
    };
    std::vector<Tabs> tabs;
    for (auto [m, l] : kMlPairs) {
        const auto ym = MomentProvider::iid_sum(uniform(), m);
        const auto yl = MomentProvider::iid_sum(uniform(), l);
        Tabs t;
        for (const auto& p : bern(Poly(static_cast<long>(m)), kX + kY, N))
            t.expected_family.push_back(expect(p, Var::y, yl));
        t.lower_family = bern(Poly(static_cast<long>(m - l)), kX, N);
        for (const auto& p : sheffer_table(ShefferY(ym, N), N, kX + kY))
            t.eq35_lhs.push_back(expect(p, Var::y, yl));
        t.eq35_rhs = sheffer_table(ShefferY(MomentProvider::iid_sum(uniform(), m - l), N), N, kX);
        tabs.push_back(std::move(t));
    }
    return per_n(N, [&](std::size_t n) {
        std::vector<Instance> out;
        for (std::size_t i = 0; i < kMlPairs.size(); ++i) {
            const auto [m, l] = kMlPairs[i];
            out.push_back({ml_label(m, l), sum_over_k_with_weight(n, m, tabs[i].expected_family),
                           sum_over_k_with_weight(n, m - l, tabs[i].lower_family)});
            out.push_back({ml_label(m, l) + ",shifted-sheffer", tabs[i].eq35_lhs[n], tabs[i].eq35_rhs[n]});
        }
        return out;
    });
}

Evaluation thm37(std::size_t N)
{
    std::vector<Table> lhs, rhs;
    for (auto [m, l] : kMlPairs) {
        const auto yl = MomentProvider::iid_sum(ber_half(), l);
        Table e;
        for (const auto& p : sheffer_table(ShefferY(MomentProvider::iid_sum(ber_half(), m), N), N, kX + kY))
            e.push_back(expect(p, Var::y, yl));
        lhs.push_back(std::move(e));
        rhs.push_back(eul(Poly(static_cast<long>(m - l)), kX, N));
    }
    return per_n(N, [&](std::size_t n) {
        std::vector<Instance> out;
        for (std::size_t i = 0; i < kMlPairs.size(); ++i)
            out.push_back({ml_label(kMlPairs[i].first, kMlPairs[i].second), lhs[i][n], rhs[i][n]});
        return out;
    });
}

Evaluation eq50(std::size_t N)
{
    const Table s = sheffer_table(ShefferY(uniform(), N), N, kX);
    // log(1 + λt) / λ, then both numerator and e_λ(t) - 1 divided by t.
    const Series log_term = log(Series::constant(Poly(1), N + 1) + scale_t(Series::t(N + 1), kLambda));
    std::vector<Poly> over_lambda;
    for (const auto& c : log_term.coeffs())
        over_lambda.push_back(c.divide_by_var(Var::lambda));
    const Series numerator = div_t(Series(std::move(over_lambda)));
    const Series denominator = div_t(deg_exponential(Poly(1), N + 1) - Series::constant(Poly(1), N + 1));
    const Series gf = numerator * reciprocal(denominator) * deg_exponential(kX, N);
    return per_n(N, [&](std::size_t n) { return one(s[n], egf_coefficient(gf, n)); });
}

std::string canonical_alias(std::string_view id)
{
    std::string s(id);
    auto swap_suffix = [&](std::string_view from, std::string_view to) {
        if (s.size() > from.size() && s.ends_with(from))
            s = s.substr(0, s.size() - from.size()) + std::string(to);
    };
    swap_suffix("-bernoulli", "-B");
    swap_suffix("-euler", "-E");
    return s;
}

} // namespace

bool glob_match(std::string_view pattern, std::string_view text) noexcept
{
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*')
        ++p;
    return p == pattern.size();
}

Registry Registry::standard()
{
    using V = std::vector<Var>;
    const V abxy{Var::lambda, Var::a, Var::b, Var::x, Var::y};
    const V axy{Var::lambda, Var::a, Var::x, Var::y};
    const V ax{Var::lambda, Var::a, Var::x};
    const V abx{Var::lambda, Var::a, Var::b, Var::x};
    const V x{Var::lambda, Var::x};
    const V xp{Var::lambda, Var::x, Var::p};
    const V xyp{Var::lambda, Var::x, Var::y, Var::p};

    Registry r;
    r.add({"prop2.1-B", "β^{(a+b)}_n(x+y) = Σ C(n,k) β^{(a)}_k(x) β^{(b)}_{n-k}(y)", abxy, 0,
           [](std::size_t n) { return prop21(n, true); }});
    r.add({"prop2.1-E", "E^{(a+b)}_n(x+y) = Σ C(n,k) E^{(a)}_k(x) E^{(b)}_{n-k}(y)", abxy, 0,
           [](std::size_t n) { return prop21(n, false); }});
    r.add({"cor2.2-B", "β^{(a)}_n(x+y) = Σ C(n,k) β^{(a)}_k(x) (y)_{n-k}", axy, 0,
           [](std::size_t n) { return cor22(n, true); }});
    r.add({"cor2.2-E", "E^{(a)}_n(x+y) = Σ C(n,k) E^{(a)}_k(x) (y)_{n-k}", axy, 0,
           [](std::size_t n) { return cor22(n, false); }});
    r.add({"thm2.3-B", "β^{(α)}_n(x+1) - β^{(α)}_n(x) = n β^{(α-1)}_{n-1}(x)", ax, 0, thm23_bernoulli});
    r.add({"thm2.3-E", "E^{(α)}_n(x+1) + E^{(α)}_n(x) = 2 E^{(α-1)}_n(x)", ax, 0, thm23_euler});
    r.add({"thm2.4", "β_n(x) = (n/2) E_{n-1}(x) + Σ C(n,k) β_k E_{n-k}(x)", x, 0, thm24});
    r.add({"prop-T-add", "T^{(a,b)}_n(x+y) = Σ C(n,k) β^{(a)}_k(x) E^{(b)}_{n-k}(y)", abxy, 0, prop_t_add});
    r.add({"prop-T-expand", "T^{(a,b)}_n(x) = Σ C(n,k) T^{(a,b)}_k(0) (x)_{n-k}", abx, 0, prop_t_expand});
    r.add({"thm-T-two-expansions",
           "T^{(a,b)}_n(x) = Σ C(n,k) T^{(a-1,b)}_k(0) β_{n-k}(x) = Σ C(n,k) T^{(a,b-1)}_k(0) E_{n-k}(x)", abx, 0,
           thm_t_two_expansions});
    r.add({"thm2.7", "2^n β_{n,λ/2}(x/2) = Σ C(n,k) β_k E_{n-k}(x)", x, 0, thm27});
    r.add({"thm2.8", "T^{(a,b)}_n(x+1) - T^{(a,b)}_n(x) = n T^{(a-1,b)}_{n-1}(x)", abx, 0, thm28});
    r.add({"thm3.1", "E[S^Y_n(x+Y)] = (x)_n for Y in {U[0,1], Ber(1/2), Ber(p)}", xp, 0, thm31});
    r.add({"thm3.2", "S^{Y1+Y2}_n(x+y) = Σ C(n,k) S^{Y1}_k(x) S^{Y2}_{n-k}(y)", xyp, 0, thm32});
    r.add({"thm3.3", "S^{U[0,1]}_n(x) = Σ C(n,k) β_k(x) (-λ)^{n-k} (n-k)! / (n-k+1)", x, 0, thm33});
    r.add({"thm3.4", "S^{Ber(1/2)}_n(x) = E_n(x)", x, 0, thm34});
    r.add({"thm3.5", "S^{U^(m)}_n(x) = Σ C(n,k)/C(n-k+m,m) λ^{n-k} S1(n-k+m,m) β^{(m)}_k(x), m = 1..3", x, 0,
           thm35});
    r.add({"thm3.6", "U[0,1] shifted expectation identity for (m,l) in {(2,1),(3,1),(3,2)}", x, 0, thm36});
    r.add({"thm3.7", "E[S^{Y^(m)}_n(x+Y^(l))] = E^{(m-l)}_n(x), Y ~ Ber(1/2)", x, 0, thm37});
    r.add({"thm3.8", "T^{(a,b-1)}_n(x) = (T^{(a,b)}_n(x+1) + T^{(a,b)}_n(x)) / 2", abx, 0, thm38});
    r.add({"thm3.9", "T^{(a,b)}_n(x) = T^{(a,b-1)}_n(x) - (n/2) T^{(a-1,b)}_{n-1}(x)", abx, 0, thm39});
    r.add({"thm3.10",
           "Σ C(n,k) β^{(a)}_k(x) E^{(b-1)}_{n-k}(y) = Σ C(n,k) [β^{(a)}_k(x) + (k/2) β^{(a-1)}_{k-1}(x)] "
           "E^{(b)}_{n-k}(y)",
           abxy, 0, thm310});
    r.add({"thm3.11-B", "β^{(a)}_n(x+y) = Σ C(n,k) [β^{(a)}_k(x) + (k/2) β^{(a-1)}_{k-1}(x)] E_{n-k}(y)", axy, 0,
           thm311_bernoulli});
    r.add({"thm3.11-E",
           "E^{(b)}_n(x+y) = Σ C(n,k) 2/(k+1) β_{n-k}(x) (E^{(b-1)}_{k+1}(y) - E^{(b)}_{k+1}(y))",
           {Var::lambda, Var::b, Var::x, Var::y}, 1, thm311_euler});
    r.add({"eq50-volkenborn", "S^{U[0,1]}_n(x) = n! [t^n] log(1+λt) / (λ (e_λ(t) - 1)) e_λ^x(t)", x, 0, eq50});
    return r;
}

void Registry::add(IdentityCase c)
{
    if (contains(c.id))
        throw BadParams("duplicate identity id " + c.id);
    cases_.push_back(std::move(c));
}

void Registry::replace(IdentityCase c)
{
    for (auto& existing : cases_)
        if (existing.id == c.id) {
            existing = std::move(c);
            return;
        }
    throw UnknownIdentity("unknown identity '" + c.id + "'");
}

const IdentityCase& Registry::find(std::string_view id) const
{
    const std::string key = canonical_alias(id);
    for (const auto& c : cases_)
        if (c.id == key)
            return c;
    throw UnknownIdentity("unknown identity '" + std::string(id) + "'");
}

bool Registry::contains(std::string_view id) const
{
    const std::string key = canonical_alias(id);
    return std::any_of(cases_.begin(), cases_.end(), [&](const auto& c) { return c.id == key; });
}

std::vector<std::string> Registry::ids() const
{
    std::vector<std::string> out;
    for (const auto& c : cases_)
        out.push_back(c.id);
    return out;
}

std::vector<std::string> Registry::select(const std::vector<std::string>& patterns) const
{
    std::vector<std::string> out;
    for (const auto& c : cases_) {
        const bool hit = std::any_of(patterns.begin(), patterns.end(), [&](const std::string& p) {
            return glob_match(p, c.id) || canonical_alias(p) == c.id;
        });
        if (hit)
            out.push_back(c.id);
    }
    return out;
}

Report verify(const Registry& registry, std::string_view id, std::size_t max_n, const VerifyConfig& config)
{
    const IdentityCase& c = registry.find(id);
    if (max_n + c.order_margin > config.order)
        throw OrderExceeded(c.id + " needs truncation order " + std::to_string(max_n + c.order_margin) +
                            ", configured order is " + std::to_string(config.order));
    const Evaluation ev = c.evaluate(max_n);
    Report report{c.id, max_n, true, std::nullopt, {}};
    for (Var v : c.params)
        if (!config.pins.contains(v))
            report.symbolic.push_back(v);
    for (std::size_t n = 0; n < ev.size() && n <= max_n; ++n) {
        for (const auto& inst : ev[n]) {
            Poly lhs = inst.lhs.substitute(config.pins);
            Poly rhs = inst.rhs.substitute(config.pins);
            Poly diff = lhs - rhs;
            if (!diff.is_zero()) {
                report.equal = false;
                report.first_mismatch = Mismatch{n, inst.label, std::move(lhs), std::move(rhs), std::move(diff)};
                return report;
            }
        }
    }
    return report;
}

std::vector<Report> verify_all(const Registry& registry, const std::vector<std::string>& patterns,
                               std::size_t max_n, const VerifyConfig& config)
{
    const auto ids = registry.select(patterns);
    std::vector<Report> reports;
    reports.reserve(ids.size());
    if (!config.parallel) {
        for (const auto& id : ids)
            reports.push_back(verify(registry, id, max_n, config));
        return reports;
    }
    std::vector<std::future<Report>> pending;
    pending.reserve(ids.size());
    for (const auto& id : ids)
        pending.push_back(std::async(std::launch::async, [&registry, id, max_n, &config] {
            return verify(registry, id, max_n, config);
        }));
    for (auto& f : pending)
        reports.push_back(f.get());
    return reports;
}

Registry with_fault(const Registry& registry, std::string_view id)
{
    Registry out = registry;
    IdentityCase c = registry.find(id);
    auto inner = c.evaluate;
    c.evaluate = [inner](std::size_t max_n) {
        Evaluation ev = inner(max_n);
        for (auto& instances : ev)
            for (auto& inst : instances)
                inst.rhs += Poly(1);
        return ev;
    };
    out.replace(std::move(c));
    return out;
}

} // namespace degsheffer
