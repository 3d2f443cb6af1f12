#include "degsheffer/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "degsheffer/errors.hpp"
#include "degsheffer/families.hpp"
#include "degsheffer/randvar.hpp"
#include "degsheffer/render.hpp"

namespace degsheffer::cli {

namespace {

// Settings resolved with precedence flags > environment > config file > defaults.
class Settings {
public:
    void set_default(const std::string& key, std::string value) { defaults_[key] = std::move(value); }
    void set_file(const std::string& key, std::string value) { file_[key] = std::move(value); }
    void set_env(const std::string& key, std::string value) { env_[key] = std::move(value); }
    void set_flag(const std::string& key, std::string value) { flags_[key] = std::move(value); }

    std::optional<std::string> get(const std::string& key) const
    {
        for (const auto* layer : {&flags_, &env_, &file_, &defaults_}) {
            const auto it = layer->find(key);
            if (it != layer->end())
                return it->second;
        }
        return std::nullopt;
    }

    std::string require(const std::string& key) const
    {
        auto v = get(key);
        if (!v)
            throw BadParams("missing setting '" + key + "'");
        return *v;
    }

    bool has(const std::string& key) const { return get(key).has_value(); }

private:
    std::map<std::string, std::string> defaults_, file_, env_, flags_;
};

const std::vector<std::string> kSettingKeys{"order", "n",       "format", "lambda", "x",        "p",      "a",
                                            "b",     "m",       "l",      "samples", "seed",    "provider",
                                            "workers"};

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

void load_config_file(Settings& settings, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw BadParams("cannot read config file '" + path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw BadParams(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        if (std::find(kSettingKeys.begin(), kSettingKeys.end(), key) == kSettingKeys.end())
            throw BadParams(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        settings.set_file(key, trim(line.substr(eq + 1)));
    }
}

std::string env_name(const std::string& key)
{
    std::string name(kEnvPrefix);
    for (char c : key)
        name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return name;
}

std::size_t as_index(const Settings& s, const std::string& key)
{
    const std::string v = s.require(key);
    try {
        std::size_t used = 0;
        const long long parsed = std::stoll(v, &used);
        if (used != v.size() || parsed < 0)
            throw BadParams("");
        return static_cast<std::size_t>(parsed);
    } catch (const std::exception&) {
        throw BadParams("--" + key + " expects a non-negative integer, got '" + v + "'");
    }
}

std::uint64_t as_u64(const Settings& s, const std::string& key)
{
    const std::string v = s.require(key);
    try {
        std::size_t used = 0;
        const unsigned long long parsed = std::stoull(v, &used);
        if (used != v.size() || v.front() == '-')
            throw BadParams("");
        return parsed;
    } catch (const std::exception&) {
        throw BadParams("--" + key + " expects a non-negative integer, got '" + v + "'");
    }
}

Rational as_rational(const Settings& s, const std::string& key)
{
    try {
        return Rational::parse(s.require(key));
    } catch (const ParseError& e) {
        throw BadParams("--" + key + " expects a rational: " + e.what());
    }
}

Poly as_poly(const Settings& s, const std::string& key)
{
    try {
        return Poly::parse(s.require(key));
    } catch (const ParseError& e) {
        throw BadParams("--" + key + " expects a polynomial: " + e.what());
    }
}

OutputFormat as_format(const Settings& s)
{
    const auto name = s.require("format");
    const auto f = parse_format(name);
    if (!f)
        throw BadParams("--format must be one of json, csv, latex, plain; got '" + name + "'");
    return *f;
}

MomentProvider as_provider(const Settings& s)
{
    const std::string name = s.require("provider");
    MomentProvider base = [&] {
        if (name == "uniform01")
            return MomentProvider::uniform01();
        if (name == "bernoulli")
            return MomentProvider::bernoulli(as_poly(s, "p"));
        if (name == "zero")
            return MomentProvider::zero();
        throw BadParams("--provider must be uniform01, bernoulli or zero; got '" + name + "'");
    }();
    if (s.has("m")) {
        const auto m = as_index(s, "m");
        if (m != 1)
            return MomentProvider::iid_sum(std::move(base), static_cast<unsigned>(m));
    }
    return base;
}

// ---------------------------------------------------------------------------

int cmd_table(const std::string& family_arg, const Settings& s, std::ostream& out)
{
    const auto family = parse_family(family_arg);
    const bool sheffer_y = family_arg == "sheffer-y";
    if (!family && !sheffer_y) {
        std::string names;
        for (FamilyId id : kAllFamilies)
            names += std::string(family_name(id)) + ", ";
        throw BadParams("unknown family '" + family_arg + "'; expected one of " + names + "sheffer-y");
    }
    const std::size_t order = as_index(s, "order");
    const std::size_t n_max = as_index(s, "n");
    if (n_max > order)
        throw BadParams("--n " + std::to_string(n_max) + " exceeds truncation --order " + std::to_string(order));
    const OutputFormat format = as_format(s);

    Assignment pins;
    std::optional<Rational> lambda;
    if (s.has("lambda")) {
        lambda = as_rational(s, "lambda");
        pins[Var::lambda] = Poly(*lambda);
    }

    TableDoc doc;
    doc.family = family_arg;
    if (lambda)
        doc.params.emplace_back("lambda", lambda->to_string());

    auto add_rows = [&](const std::vector<Poly>& values) {
        for (std::size_t n = 0; n < values.size(); ++n)
            doc.rows.push_back({n, std::nullopt, values[n].substitute(pins)});
    };

    if (sheffer_y) {
        const Poly at = s.has("x") ? as_poly(s, "x") : vars::x();
        const MomentProvider provider = as_provider(s);
        doc.params.emplace_back("provider", provider.describe());
        doc.params.emplace_back("x", at.to_string());
        add_rows(sheffer_table(ShefferY(provider, n_max), n_max, at));
        out << render_table(doc, format);
        return kExitSuccess;
    }

    switch (*family) {
    case FamilyId::Stirling1:
        for (std::size_t n = 0; n <= n_max; ++n)
            for (std::size_t k = 0; k <= n; ++k)
                doc.rows.push_back({n, k, Poly(stirling1(n, k))});
        break;
    case FamilyId::FallingLambda: {
        const Poly at = s.has("x") ? as_poly(s, "x") : vars::x();
        doc.params.emplace_back("x", at.to_string());
        std::vector<Poly> values;
        for (std::size_t n = 0; n <= n_max; ++n)
            values.push_back(falling_lambda(at, n));
        add_rows(values);
        break;
    }
    case FamilyId::DegBernoulli:
    case FamilyId::DegEuler:
    case FamilyId::HigherBernoulli:
    case FamilyId::HigherEuler: {
        const Poly at = s.has("x") ? as_poly(s, "x") : Poly();
        const bool higher = *family == FamilyId::HigherBernoulli || *family == FamilyId::HigherEuler;
        const Poly ord = higher ? as_poly(s, "a") : Poly(1);
        if (higher)
            doc.params.emplace_back("a", ord.to_string());
        doc.params.emplace_back("x", at.to_string());
        const bool bernoulli = *family == FamilyId::DegBernoulli || *family == FamilyId::HigherBernoulli;
        add_rows(egf_table(bernoulli ? bernoulli_gf(ord, at, n_max) : euler_gf(ord, at, n_max), n_max));
        break;
    }
    case FamilyId::ShefferT: {
        const Poly at = s.has("x") ? as_poly(s, "x") : Poly();
        const Poly a = as_poly(s, "a");
        const Poly b = as_poly(s, "b");
        doc.params.emplace_back("a", a.to_string());
        doc.params.emplace_back("b", b.to_string());
        doc.params.emplace_back("x", at.to_string());
        add_rows(egf_table(sheffer_t_gf(a, b, at, n_max), n_max));
        break;
    }
    }
    out << render_table(doc, format);
    return kExitSuccess;
}

int cmd_verify(const std::vector<std::string>& patterns_arg, const Settings& s, const Registry& registry,
               std::ostream& out)
{
    const std::vector<std::string> patterns = patterns_arg.empty() ? std::vector<std::string>{"*"} : patterns_arg;
    for (const auto& p : patterns) {
        const bool wildcard = p.find_first_of("*?") != std::string::npos;
        if (!wildcard && !registry.contains(p))
            throw UnknownIdentity("unknown identity '" + p + "'");
        if (wildcard && registry.select({p}).empty())
            throw UnknownIdentity("no identity matches '" + p + "'");
    }
    VerifyConfig config;
    config.order = as_index(s, "order");
    for (const auto& [key, var] : std::vector<std::pair<std::string, Var>>{
             {"lambda", Var::lambda}, {"x", Var::x}, {"a", Var::a}, {"b", Var::b}, {"p", Var::p}})
        if (s.has(key))
            config.pins[var] = Poly(as_rational(s, key));
    const std::size_t max_n = as_index(s, "n");
    const auto reports = verify_all(registry, patterns, max_n, config);
    out << render_reports(reports, as_format(s));
    const bool all_equal = std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.equal; });
    return all_equal ? kExitSuccess : kExitVerificationFailure;
}

int cmd_mc(const std::string& identity, const Settings& s, std::ostream& out)
{
    const auto n = as_index(s, "n");
    const Rational lambda = as_rational(s, "lambda");
    const Rational x = as_rational(s, "x");
    const auto samples = as_u64(s, "samples");
    const auto seed = as_u64(s, "seed");
    const auto workers = static_cast<unsigned>(as_index(s, "workers"));

    McDoc doc;
    doc.identity = identity;
    doc.n = n;
    doc.lambda = lambda;
    doc.x = x;
    doc.samples = samples;
    doc.seed = seed;

    McTarget target = [&] {
        if (identity == "thm3.1") {
            const MomentProvider provider = as_provider(s);
            if (!provider.samplable())
                throw UnsamplableProvider("no sampler for " + provider.describe());
            doc.provider = provider.describe();
            return thm31_target(provider, lambda, x, n);
        }
        if (identity == "thm3.7") {
            const auto m = static_cast<unsigned>(s.has("m") ? as_index(s, "m") : 2);
            const auto l = static_cast<unsigned>(s.has("l") ? as_index(s, "l") : 1);
            if (m < l)
                throw BadParams("thm3.7 needs --m >= --l");
            doc.provider = "bernoulli(1/2), m=" + std::to_string(m) + ", l=" + std::to_string(l);
            return thm37_target(m, l, lambda, x, n);
        }
        throw BadParams("mc supports thm3.1 and thm3.7, got '" + identity + "'");
    }();
    doc.result = mc_estimate(target, samples, seed, workers);
    out << render_mc(doc, as_format(s));
    return doc.result.pass ? kExitSuccess : kExitVerificationFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& environment)
{
    CLI::App app{"Exact degenerate Bernoulli/Euler/Sheffer polynomial tables and identity checks", "degsheffer"};
    app.require_subcommand(1);

    std::map<std::string, std::string> flag_values;
    std::string config_path;
    app.add_option("--config", config_path, "key=value settings file");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", flag_values["n"], "largest index n (table/mc) or maxN (verify)");
        sub->add_option("--order", flag_values["order"], "series truncation order N");
        sub->add_option("--format", flag_values["format"], "json | csv | latex | plain");
        sub->add_option("--lambda", flag_values["lambda"], "pin λ to a rational");
        sub->add_option("--x", flag_values["x"], "evaluation point x (polynomial or rational)");
        sub->add_option("--p", flag_values["p"], "Bernoulli success probability");
        sub->add_option("--a", flag_values["a"], "order a (higher-order and Sheffer-type families)");
        sub->add_option("--b", flag_values["b"], "order b (Sheffer-type family)");
        sub->add_option("--m", flag_values["m"], "number of i.i.d. copies");
        sub->add_option("--l", flag_values["l"], "number of i.i.d. copies in the shift (thm3.7)");
        sub->add_option("--provider", flag_values["provider"], "uniform01 | bernoulli | zero");
        sub->add_option("--config", config_path, "key=value settings file");
    };

    std::string family;
    auto* table = app.add_subcommand("table", "print a polynomial family for n = 0..N");
    table->add_option("family", family, "family name")->required();
    add_common(table);

    std::vector<std::string> patterns;
    std::string fault_id;
    auto* verify_cmd = app.add_subcommand("verify", "check registered identities exactly");
    verify_cmd->add_option("ids", patterns, "identity ids or glob patterns (default: all)");
    verify_cmd->add_option("--inject-fault", fault_id, "corrupt one identity's right-hand side (self-test)")
        ->group("");
    add_common(verify_cmd);

    std::string identity;
    auto* mc = app.add_subcommand("mc", "Monte-Carlo spot check of an expectation identity");
    mc->add_option("identity", identity, "thm3.1 | thm3.7")->required();
    add_common(mc);
    mc->add_option("--samples", flag_values["samples"], "number of samples");
    mc->add_option("--seed", flag_values["seed"], "PRNG seed");
    mc->add_option("--workers", flag_values["workers"], "worker threads (result does not depend on this)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        Settings s;
        s.set_default("order", std::to_string(kDefaultOrder));
        s.set_default("n", verify_cmd->parsed() ? "8" : "10");
        s.set_default("format", "plain");
        if (table->parsed()) {
            s.set_default("a", "a");
            s.set_default("b", "b");
        }
        if (!verify_cmd->parsed())
            s.set_default("p", "1/2");
        s.set_default("provider", "uniform01");
        s.set_default("samples", "100000");
        s.set_default("seed", "42");
        if (mc->parsed()) {
            s.set_default("lambda", "1/8");
            s.set_default("x", "1/4");
        }
        s.set_default("workers", std::to_string(std::max(1u, std::thread::hardware_concurrency())));

        const EnvLookup env = environment.env ? environment.env : [](std::string_view name) -> std::optional<std::string> {
            if (const char* v = std::getenv(std::string(name).c_str()))
                return std::string(v);
            return std::nullopt;
        };
        if (config_path.empty())
            if (auto v = env(std::string(kEnvPrefix) + "CONFIG"))
                config_path = *v;
        if (!config_path.empty())
            load_config_file(s, config_path);
        for (const auto& key : kSettingKeys)
            if (auto v = env(env_name(key)))
                s.set_env(key, *v);
        CLI::App* active = app.get_subcommands().front();
        for (const auto& key : kSettingKeys) {
            const std::string flag = "--" + key;
            try {
                if (active->get_option(flag)->count() > 0)
                    s.set_flag(key, flag_values[key]);
            } catch (const CLI::OptionNotFound&) {
            }
        }

        if (table->parsed())
            return cmd_table(family, s, out);
        if (verify_cmd->parsed()) {
            Registry registry = environment.registry ? *environment.registry : Registry::standard();
            if (!fault_id.empty())
                registry = with_fault(registry, fault_id);
            return cmd_verify(patterns, s, registry, out);
        }
        return cmd_mc(identity, s, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace degsheffer::cli
