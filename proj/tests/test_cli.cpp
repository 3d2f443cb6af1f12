#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "degsheffer/cli.hpp"
#include "degsheffer/families.hpp"
#include "degsheffer/render.hpp"

using namespace degsheffer;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args, std::map<std::string, std::string> env = {},
               std::optional<Registry> registry = std::nullopt)
{
    std::ostringstream out, err;
    cli::Environment e;
    e.env = [env](std::string_view name) -> std::optional<std::string> {
        if (auto it = env.find(std::string(name)); it != env.end())
            return it->second;
        return std::nullopt;
    };
    e.registry = std::move(registry);
    const int code = cli::run(args, out, err, e);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);)
        v.push_back(l);
    return v;
}

class TempFile {
public:
    explicit TempFile(const std::string& content)
        : path_(std::filesystem::temp_directory_path() /
                ("degsheffer_cfg_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + ".conf"))
    {
        std::ofstream(path_) << content;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

} // namespace

TEST(CliTable, BernoulliRows)
{
    const Result r = run_cli({"table", "deg-bernoulli", "--n", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::vector<std::string> expected{
        "# deg-bernoulli x=0",
        "n=0: 1",
        "n=1: 1/2*λ - 1/2",
        "n=2: -1/6*λ^2 + 1/6",
        "n=3: 1/4*λ^3 - 1/4*λ",
        "n=4: -19/30*λ^4 + 2/3*λ^2 - 1/30",
        "n=5: 9/4*λ^5 - 5/2*λ^3 + 1/4*λ",
    };
    EXPECT_EQ(lines(r.out), expected);
}

TEST(CliTable, EulerClassicalValues)
{
    const Result r = run_cli({"table", "deg-euler", "--n", "5", "--lambda", "0", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out), (std::vector<std::string>{"n,value", "0,\"1\"", "1,\"-1/2\"", "2,\"0\"", "3,\"1/4\"",
                                                      "4,\"0\"", "5,\"-1/2\""}));
}

TEST(CliTable, StirlingSingleRow)
{
    const Result r = run_cli({"table", "stirling1", "--n", "0"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(lines(r.out), (std::vector<std::string>{"# stirling1", "n=0 k=0: 1"}));
}

TEST(CliTable, OrderTooSmall)
{
    const Result r = run_cli({"table", "deg-bernoulli", "--n", "20", "--order", "16"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("order"), std::string::npos);
    EXPECT_EQ(run_cli({"table", "no-family"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"table", "deg-euler", "--lambda", "abc"}).code, cli::kExitUsage);
}

TEST(CliTable, JsonRoundTripIsExact)
{
    const Result r = run_cli({"table", "higher-bernoulli", "--n", "6", "--x", "x", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const TableDoc doc = parse_table_json(r.out);
    EXPECT_EQ(doc.family, "higher-bernoulli");
    ASSERT_EQ(doc.rows.size(), 7u);
    for (std::size_t n = 0; n <= 6; ++n) {
        EXPECT_EQ(doc.rows[n].n, n);
        EXPECT_EQ(doc.rows[n].value, bernoulli_higher(n, vars::a(), vars::x()));
    }
    EXPECT_EQ(render_table(doc, OutputFormat::json), r.out);
    EXPECT_EQ(r.out.find("e-"), std::string::npos);
}

TEST(CliTable, LatexOutput)
{
    const Result r = run_cli({"table", "deg-euler", "--n", "1", "--format", "latex"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\\begin{tabular}"), std::string::npos);
    EXPECT_NE(r.out.find("-\\frac{1}{2}"), std::string::npos);
}

TEST(CliVerify, GlobSelectsAndSucceeds)
{
    const Result r = run_cli({"verify", "thm2.*"});
    EXPECT_EQ(r.code, cli::kExitSuccess) << r.out;
    EXPECT_NE(r.out.find("5/5 identities verified"), std::string::npos);
}

TEST(CliVerify, SymbolicParametersShown)
{
    const Result r = run_cli({"verify", "thm3.4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("PASS thm3.4 (n <= 8; symbolic λ, x)"), std::string::npos) << r.out;
}

TEST(CliVerify, JsonSchema)
{
    const Result r = run_cli({"verify", "thm3.4", "prop2.1-*", "--n", "4", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"version\": 1"), std::string::npos);
    EXPECT_NE(r.out.find("\"id\": \"prop2.1-B\""), std::string::npos);
    EXPECT_NE(r.out.find("\"maxN\": 4"), std::string::npos);
    EXPECT_NE(r.out.find("\"mismatch\": null"), std::string::npos);
}

TEST(CliVerify, UnknownIdIsUsageError)
{
    EXPECT_EQ(run_cli({"verify", "no-such-id"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"verify", "zzz*"}).code, cli::kExitUsage);
}

TEST(CliVerify, FaultGivesFailureExit)
{
    const Result r = run_cli({"verify", "thm2.*", "--n", "4"}, {}, with_fault(Registry::standard(), "thm2.7"));
    EXPECT_EQ(r.code, cli::kExitVerificationFailure);
    EXPECT_NE(r.out.find("FAIL thm2.7"), std::string::npos);
    EXPECT_NE(r.out.find("first mismatch at n=0"), std::string::npos);
    EXPECT_NE(r.out.find("4/5 identities verified"), std::string::npos);

    const Result j = run_cli({"verify", "thm2.4", "--inject-fault", "thm2.4", "--format", "json"});
    EXPECT_EQ(j.code, cli::kExitVerificationFailure);
    EXPECT_NE(j.out.find("\"diff\": \"-1\""), std::string::npos) << j.out;
}

TEST(CliVerify, OrderTooSmallForMaxN)
{
    EXPECT_EQ(run_cli({"verify", "thm2.4", "--n", "10", "--order", "8"}).code, cli::kExitUsage);
}

TEST(CliMc, ByteDeterministic)
{
    const std::vector<std::string> args{"mc", "thm3.1", "--n", "2", "--samples", "20000", "--format", "json"};
    const Result a = run_cli(args);
    const Result b = run_cli(args);
    const Result c = run_cli([&] {
        auto v = args;
        v.insert(v.end(), {"--workers", "3"});
        return v;
    }());
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    EXPECT_NE(a.out.find("\"exact\": \"1/32\""), std::string::npos) << a.out;
}

TEST(CliMc, DegreeZero)
{
    const Result r = run_cli({"mc", "thm3.1", "--n", "0", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"estimate\": 1.0"), std::string::npos);
    EXPECT_NE(r.out.find("\"std_error\": 0.0"), std::string::npos);
    EXPECT_NE(r.out.find("\"pass\": true"), std::string::npos);
}

TEST(CliMc, DefaultSeedFirstDegreePasses)
{
    const Result r = run_cli({"mc", "thm3.1", "--n", "1"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(CliMc, HigherOrderEulerTarget)
{
    const Result r = run_cli({"mc", "thm3.7", "--m", "2", "--l", "1", "--n", "2", "--samples", "30000"});
    EXPECT_EQ(r.code, 0) << r.out;
}

TEST(CliMc, Unsamplable)
{
    const Result r = run_cli({"mc", "thm3.1", "--provider", "bernoulli", "--p", "p"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("sampler"), std::string::npos);
    EXPECT_EQ(run_cli({"mc", "thm9.9"}).code, cli::kExitUsage);
}

TEST(CliConfig, Precedence)
{
    TempFile file("# defaults for tests\nformat = csv\nn = 1\n");
    const std::vector<std::string> base{"table", "deg-euler", "--config", file.path()};

    const Result from_file = run_cli(base);
    EXPECT_EQ(lines(from_file.out), (std::vector<std::string>{"n,value", "0,\"1\"", "1,\"-1/2\""}));

    const Result from_env = run_cli(base, {{"DEGSHEFFER_N", "0"}});
    EXPECT_EQ(lines(from_env.out), (std::vector<std::string>{"n,value", "0,\"1\""}));

    auto with_flag = base;
    with_flag.insert(with_flag.end(), {"--n", "2", "--format", "plain"});
    const Result from_flag = run_cli(with_flag, {{"DEGSHEFFER_N", "0"}, {"DEGSHEFFER_FORMAT", "json"}});
    EXPECT_EQ(lines(from_flag.out).size(), 4u);
    EXPECT_EQ(lines(from_flag.out)[0], "# deg-euler x=0");

    const Result via_env_path = run_cli({"table", "deg-euler"}, {{"DEGSHEFFER_CONFIG", file.path()}});
    EXPECT_EQ(via_env_path.out, from_file.out);
}

TEST(CliConfig, BadConfig)
{
    TempFile file("not a setting line\n");
    EXPECT_EQ(run_cli({"table", "deg-euler", "--config", file.path()}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"table", "deg-euler", "--config", "/nonexistent/file.conf"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"table", "deg-euler"}, {{"DEGSHEFFER_ORDER", "many"}}).code, cli::kExitUsage);
}

TEST(Cli, HelpAndUsage)
{
    EXPECT_EQ(run_cli({"--help"}).code, 0);
    EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"table", "deg-euler", "--bogus"}).code, cli::kExitUsage);
}
