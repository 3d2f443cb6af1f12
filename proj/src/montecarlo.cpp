#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "degsheffer/errors.hpp"
#include "degsheffer/families.hpp"
#include "degsheffer/randvar.hpp"

namespace degsheffer {

namespace {

std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

class Sampler {
public:
    explicit Sampler(const MomentProvider& provider) : provider_(provider) {}

    double draw(std::mt19937_64& rng) const { return draw(provider_, rng); }

private:
    const MomentProvider& provider_;

    static double draw(const MomentProvider& p, std::mt19937_64& rng)
    {
        const auto& kind = p.kind();
        if (std::holds_alternative<MomentProvider::Uniform01>(kind))
            return unit(rng);
        if (const auto* b = std::get_if<MomentProvider::Bernoulli>(&kind))
            return unit(rng) < b->p.constant_term().to_double() ? 1.0 : 0.0;
        if (const auto* s = std::get_if<MomentProvider::IidSum>(&kind)) {
            double sum = 0;
            for (unsigned j = 0; j < s->count; ++j)
                sum += draw(*s->base, rng);
            return sum;
        }
        if (std::holds_alternative<MomentProvider::Zero>(kind))
            return 0.0;
        throw UnsamplableProvider("no sampler for " + p.describe());
    }
};

struct ShardStats {
    std::uint64_t count = 0;
    double mean = 0;
    double m2 = 0;
};

// Chan et al. pairwise combination of running moments.
void merge(ShardStats& into, const ShardStats& s)
{
    if (s.count == 0)
        return;
    const double n = static_cast<double>(into.count + s.count);
    const double delta = s.mean - into.mean;
    into.mean += delta * static_cast<double>(s.count) / n;
    into.m2 += s.m2 + delta * delta * static_cast<double>(into.count) * static_cast<double>(s.count) / n;
    into.count += s.count;
}

std::vector<double> integrand_coefficients(const Poly& integrand)
{
    for (Var v : kAllVars)
        if (v != Var::y && integrand.contains(v))
            throw BadParams("mc integrand must depend on y only, got " + integrand.to_string());
    std::vector<double> out;
    for (const auto& c : integrand.coefficients_in(Var::y))
        out.push_back(c.constant_term().to_double());
    return out;
}

double horner(const std::vector<double>& c, double y)
{
    double acc = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * y + c[i];
    return acc;
}

Point pins(const Rational& lambda, const Rational& x) { return {{Var::lambda, lambda}, {Var::x, x}}; }

Assignment pin_assignment(const Rational& lambda, const Rational& x)
{
    return {{Var::lambda, Poly(lambda)}, {Var::x, Poly(x)}};
}

} // namespace

McTarget thm31_target(const MomentProvider& provider, const Rational& lambda, const Rational& x, std::size_t n)
{
    const ShefferY sy(provider, n);
    const Poly shifted = sheffer_poly(sy, n, vars::x() + vars::y());
    return McTarget{
        "thm3.1",
        shifted.substitute(pin_assignment(lambda, x)),
        provider,
        falling_lambda(vars::x(), n).eval(pins(lambda, x)),
    };
}

McTarget thm37_target(unsigned m, unsigned l, const Rational& lambda, const Rational& x, std::size_t n)
{
    if (m < l)
        throw BadParams("thm3.7 needs m >= l");
    const auto ber = MomentProvider::bernoulli(Poly(Rational(1, 2)));
    const ShefferY sy(MomentProvider::iid_sum(ber, m), n);
    const Poly shifted = sheffer_poly(sy, n, vars::x() + vars::y());
    const Poly exact = euler_higher(n, Poly(static_cast<long>(m - l)), vars::x(), n);
    return McTarget{
        "thm3.7",
        shifted.substitute(pin_assignment(lambda, x)),
        MomentProvider::iid_sum(ber, l),
        exact.eval(pins(lambda, x)),
    };
}

McTarget mean_target(const MomentProvider& provider)
{
    if (!provider.samplable())
        throw UnsamplableProvider("no sampler for " + provider.describe());
    return McTarget{"mean", vars::y(), provider, provider.moment(1).eval({})};
}

McEstimate mc_estimate(const McTarget& target, std::uint64_t samples, std::uint64_t seed, unsigned workers)
{
    if (!target.sampler.samplable())
        throw UnsamplableProvider("no sampler for " + target.sampler.describe());
    if (samples == 0)
        throw BadParams("mc needs at least one sample");
    const auto coeffs = integrand_coefficients(target.integrand);
    const Sampler sampler(target.sampler);

    const std::uint64_t shards = (samples + kMcShardSize - 1) / kMcShardSize;
    std::vector<ShardStats> stats(shards);
    auto run_shard = [&](std::uint64_t i) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(i)));
        const std::uint64_t count = std::min(kMcShardSize, samples - i * kMcShardSize);
        ShardStats s;
        for (std::uint64_t j = 0; j < count; ++j) {
            const double v = horner(coeffs, sampler.draw(rng));
            ++s.count;
            const double delta = v - s.mean;
            s.mean += delta / static_cast<double>(s.count);
            s.m2 += delta * (v - s.mean);
        }
        stats[i] = s;
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(shards)));
    if (workers == 1) {
        for (std::uint64_t i = 0; i < shards; ++i)
            run_shard(i);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::uint64_t i = w; i < shards; i += workers)
                    run_shard(i);
            });
    }

    ShardStats total;
    for (const auto& s : stats)
        merge(total, s);

    McEstimate out;
    out.samples = total.count;
    out.estimate = total.mean;
    out.exact = target.exact;
    const double variance = total.count > 1 ? total.m2 / static_cast<double>(total.count - 1) : 0.0;
    out.std_error = std::sqrt(variance / static_cast<double>(total.count));
    const double diff = out.estimate - out.exact.to_double();
    if (out.std_error > 0)
        out.z = diff / out.std_error;
    else
        out.z = diff == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    out.pass = std::abs(out.z) <= kMcZThreshold;
    return out;
}

} // namespace degsheffer
