#include "degsheffer/render.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "degsheffer/errors.hpp"

namespace degsheffer {

using nlohmann::ordered_json;

namespace {

constexpr int kJsonVersion = 1;

ordered_json terms_json(const Poly& p)
{
    ordered_json terms = ordered_json::array();
    for (const auto& [m, c] : p.terms()) {
        ordered_json mono = ordered_json::object();
        for (Var v : kAllVars)
            if (m[v] != 0)
                mono[std::string(var_name(v))] = m[v];
        terms.push_back({{"coeff", c.to_fraction_string()}, {"monomial", mono}});
    }
    return terms;
}

std::string csv_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string latex_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        if (c == '_' || c == '&' || c == '%' || c == '#')
            out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::optional<OutputFormat> parse_format(std::string_view name) noexcept
{
    if (name == "json")
        return OutputFormat::json;
    if (name == "csv")
        return OutputFormat::csv;
    if (name == "latex")
        return OutputFormat::latex;
    if (name == "plain")
        return OutputFormat::plain;
    return std::nullopt;
}

std::string render_table(const TableDoc& doc, OutputFormat format)
{
    std::ostringstream os;
    const bool two_index = !doc.rows.empty() && doc.rows.front().k.has_value();
    switch (format) {
    case OutputFormat::json: {
        ordered_json j;
        j["version"] = kJsonVersion;
        j["family"] = doc.family;
        ordered_json params = ordered_json::object();
        for (const auto& [k, v] : doc.params)
            params[k] = v;
        j["params"] = params;
        ordered_json rows = ordered_json::array();
        for (const auto& r : doc.rows) {
            ordered_json row;
            row["n"] = r.n;
            if (r.k)
                row["k"] = *r.k;
            row["value"] = r.value.to_string();
            row["terms"] = terms_json(r.value);
            rows.push_back(std::move(row));
        }
        j["rows"] = rows;
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::csv:
        os << (two_index ? "n,k,value\n" : "n,value\n");
        for (const auto& r : doc.rows) {
            os << r.n << ',';
            if (r.k)
                os << *r.k << ',';
            os << csv_quote(r.value.to_string()) << '\n';
        }
        break;
    case OutputFormat::latex:
        os << "% " << doc.family << '\n';
        os << (two_index ? "\\begin{tabular}{rrl}\n$n$ & $k$ & value \\\\\n\\hline\n"
                         : "\\begin{tabular}{rl}\n$n$ & value \\\\\n\\hline\n");
        for (const auto& r : doc.rows) {
            os << r.n << " & ";
            if (r.k)
                os << *r.k << " & ";
            os << '$' << r.value.to_latex() << "$ \\\\\n";
        }
        os << "\\end{tabular}\n";
        break;
    case OutputFormat::plain:
        os << "# " << doc.family;
        for (const auto& [k, v] : doc.params)
            os << ' ' << k << '=' << v;
        os << '\n';
        for (const auto& r : doc.rows) {
            if (r.k)
                os << "n=" << r.n << " k=" << *r.k << ": ";
            else
                os << "n=" << r.n << ": ";
            os << r.value.to_string() << '\n';
        }
        break;
    }
    return os.str();
}

std::string render_reports(const std::vector<Report>& reports, OutputFormat format)
{
    std::ostringstream os;
    std::size_t passed = 0;
    for (const auto& r : reports)
        passed += r.equal ? 1 : 0;
    switch (format) {
    case OutputFormat::json: {
        ordered_json j;
        j["version"] = kJsonVersion;
        ordered_json cases = ordered_json::array();
        for (const auto& r : reports) {
            ordered_json c;
            c["id"] = r.id;
            c["maxN"] = r.max_n;
            c["equal"] = r.equal;
            if (r.first_mismatch)
                c["mismatch"] = {{"n", r.first_mismatch->n}, {"diff", r.first_mismatch->diff.to_string()}};
            else
                c["mismatch"] = nullptr;
            cases.push_back(std::move(c));
        }
        j["cases"] = cases;
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::csv:
        os << "id,maxN,equal,mismatch_n,diff\n";
        for (const auto& r : reports) {
            os << r.id << ',' << r.max_n << ',' << (r.equal ? "true" : "false") << ',';
            if (r.first_mismatch)
                os << r.first_mismatch->n << ',' << csv_quote(r.first_mismatch->diff.to_string());
            else
                os << ',';
            os << '\n';
        }
        break;
    case OutputFormat::latex:
        os << "\\begin{tabular}{llr}\nidentity & result & $n_{\\max}$ \\\\\n\\hline\n";
        for (const auto& r : reports)
            os << "\\texttt{" << latex_escape(r.id) << "} & " << (r.equal ? "holds" : "fails") << " & " << r.max_n
               << " \\\\\n";
        os << "\\end{tabular}\n";
        break;
    case OutputFormat::plain:
        for (const auto& r : reports) {
            os << (r.equal ? "PASS " : "FAIL ") << r.id << " (n <= " << r.max_n;
            for (std::size_t i = 0; i < r.symbolic.size(); ++i)
                os << (i ? ", " : "; symbolic ") << var_name(r.symbolic[i]);
            os << ")\n";
            if (r.first_mismatch) {
                const auto& m = *r.first_mismatch;
                os << "  first mismatch at n=" << m.n;
                if (!m.label.empty())
                    os << " [" << m.label << "]";
                os << "\n  lhs:  " << m.lhs << "\n  rhs:  " << m.rhs << "\n  diff: " << m.diff << '\n';
            }
        }
        os << passed << '/' << reports.size() << " identities verified\n";
        break;
    }
    return os.str();
}

std::string render_mc(const McDoc& doc, OutputFormat format)
{
    std::ostringstream os;
    const auto& r = doc.result;
    switch (format) {
    case OutputFormat::json: {
        ordered_json j;
        j["version"] = kJsonVersion;
        j["identity"] = doc.identity;
        j["provider"] = doc.provider;
        j["n"] = doc.n;
        j["lambda"] = doc.lambda.to_fraction_string();
        j["x"] = doc.x.to_fraction_string();
        j["samples"] = doc.samples;
        j["seed"] = doc.seed;
        j["exact"] = r.exact.to_fraction_string();
        j["exact_value"] = r.exact.to_double();
        j["estimate"] = r.estimate;
        j["std_error"] = r.std_error;
        j["z"] = r.z;
        j["pass"] = r.pass;
        os << j.dump(2) << '\n';
        break;
    }
    case OutputFormat::csv:
        os << "identity,provider,n,lambda,x,samples,seed,exact,estimate,std_error,z,pass\n";
        os << doc.identity << ',' << csv_quote(doc.provider) << ',' << doc.n << ',' << doc.lambda << ',' << doc.x
           << ',' << doc.samples << ',' << doc.seed << ',' << r.exact << ',' << fmt_double(r.estimate) << ','
           << fmt_double(r.std_error) << ',' << fmt_double(r.z) << ',' << (r.pass ? "true" : "false") << '\n';
        break;
    case OutputFormat::latex:
        os << "\\begin{tabular}{ll}\n";
        os << "identity & \\texttt{" << latex_escape(doc.identity) << "} \\\\\n";
        os << "exact & $" << Poly(r.exact).to_latex() << "$ \\\\\n";
        os << "estimate & " << fmt_double(r.estimate) << " \\\\\n";
        os << "standard error & " << fmt_double(r.std_error) << " \\\\\n";
        os << "$z$ & " << fmt_double(r.z) << " \\\\\n";
        os << "\\end{tabular}\n";
        break;
    case OutputFormat::plain:
        os << doc.identity << " provider=" << doc.provider << " n=" << doc.n << " lambda=" << doc.lambda
           << " x=" << doc.x << " samples=" << doc.samples << " seed=" << doc.seed << '\n';
        os << "exact     " << r.exact << " (" << fmt_double(r.exact.to_double()) << ")\n";
        os << "estimate  " << fmt_double(r.estimate) << '\n';
        os << "std error " << fmt_double(r.std_error) << '\n';
        os << "z         " << fmt_double(r.z) << '\n';
        os << (r.pass ? "PASS" : "FAIL") << " (|z| <= " << kMcZThreshold << ")\n";
        break;
    }
    return os.str();
}

TableDoc parse_table_json(std::string_view text)
{
    TableDoc doc;
    try {
        const auto j = ordered_json::parse(text);
        doc.family = j.at("family").get<std::string>();
        for (const auto& [k, v] : j.at("params").items())
            doc.params.emplace_back(k, v.get<std::string>());
        for (const auto& row : j.at("rows")) {
            TableRow r;
            r.n = row.at("n").get<std::size_t>();
            if (row.contains("k"))
                r.k = row.at("k").get<std::size_t>();
            std::vector<Term> terms;
            for (const auto& t : row.at("terms")) {
                Monomial m;
                for (const auto& [name, e] : t.at("monomial").items()) {
                    const auto v = parse_var(name);
                    if (!v)
                        throw ParseError("unknown variable '" + name + "' in table JSON");
                    m[*v] = e.get<std::uint16_t>();
                }
                terms.emplace_back(m, Rational::parse(t.at("coeff").get<std::string>()));
            }
            r.value = Poly::from_terms(std::move(terms));
            doc.rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed table JSON: ") + e.what());
    }
    return doc;
}

} // namespace degsheffer
