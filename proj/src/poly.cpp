#include "degsheffer/poly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "degsheffer/errors.hpp"

namespace degsheffer {

namespace {

constexpr std::array<std::string_view, kVarCount> kNames{"λ", "x", "y", "a", "b", "p"};
constexpr std::array<std::string_view, kVarCount> kLatexNames{"\\lambda", "x", "y", "a", "b", "p"};

bool grlex_greater(const Term& l, const Term& r) { return grlex_less(r.first, l.first); }

using Accumulator = std::unordered_map<Monomial, mpq_class, MonomialHash>;

std::vector<Term> drain(Accumulator& acc)
{
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (sgn(c) != 0)
            out.emplace_back(m, Rational(std::move(c)));
    std::sort(out.begin(), out.end(), grlex_greater);
    return out;
}

std::string monomial_text(const Monomial& m)
{
    std::string s;
    for (Var v : kAllVars) {
        const auto e = m[v];
        if (e == 0)
            continue;
        if (!s.empty())
            s += '*';
        s += kNames[static_cast<std::size_t>(v)];
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

std::string monomial_latex(const Monomial& m)
{
    std::string s;
    for (Var v : kAllVars) {
        const auto e = m[v];
        if (e == 0)
            continue;
        if (!s.empty() && v != Var::lambda)
            s += ' ';
        s += kLatexNames[static_cast<std::size_t>(v)];
        if (e > 1)
            s += "^{" + std::to_string(e) + "}";
    }
    return s;
}

// Recursive-descent parser over the textual polynomial form.
class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Poly parse()
    {
        Poly p = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected trailing input");
        return p;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr()
    {
        skip_ws();
        bool negate = false;
        if (accept('-'))
            negate = true;
        else
            accept('+');
        Poly acc = term();
        if (negate)
            acc = -acc;
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Poly term()
    {
        Poly acc = power();
        while (accept('*'))
            acc *= power();
        return acc;
    }

    Poly power()
    {
        Poly base = atom();
        if (accept('^'))
            base = base.pow(integer_value());
        return base;
    }

    unsigned integer_value()
    {
        skip_ws();
        const auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer");
        const auto v = std::stoul(std::string(s_.substr(start, pos_ - start)));
        if (v > std::numeric_limits<std::uint16_t>::max())
            fail("exponent too large");
        return static_cast<unsigned>(v);
    }

    Poly atom()
    {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        if (accept('(')) {
            Poly inner = expr();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        if (accept('-'))
            return -power();
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string literal(s_.substr(start, pos_ - start));
            // "n/d" binds as one rational literal.
            const auto save = pos_;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip_ws();
                const auto dstart = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
                if (dstart == pos_)
                    fail("expected denominator");
                literal += "/";
                literal += s_.substr(dstart, pos_ - dstart);
            } else {
                pos_ = save;
            }
            return Poly(Rational::parse(literal));
        }
        const auto start = pos_;
        if (s_.substr(pos_).starts_with("λ")) {
            pos_ += std::string_view("λ").size();
        } else {
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
        }
        if (start == pos_)
            fail("unexpected character");
        const auto v = parse_var(s_.substr(start, pos_ - start));
        if (!v)
            fail("unknown variable '" + std::string(s_.substr(start, pos_ - start)) + "'");
        return Poly::var(*v);
    }
};

} // namespace

std::string_view var_name(Var v) noexcept { return kNames[static_cast<std::size_t>(v)]; }
std::string_view var_latex(Var v) noexcept { return kLatexNames[static_cast<std::size_t>(v)]; }

std::optional<Var> parse_var(std::string_view name) noexcept
{
    if (name == "lambda" || name == "l")
        return Var::lambda;
    for (Var v : kAllVars)
        if (kNames[static_cast<std::size_t>(v)] == name)
            return v;
    return std::nullopt;
}

unsigned Monomial::degree() const noexcept
{
    unsigned d = 0;
    for (auto e : exp)
        d += e;
    return d;
}

Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial r;
    for (std::size_t i = 0; i < kVarCount; ++i) {
        const unsigned e = unsigned(a.exp[i]) + b.exp[i];
        if (e > std::numeric_limits<std::uint16_t>::max())
            throw std::overflow_error("monomial exponent overflow");
        r.exp[i] = static_cast<std::uint16_t>(e);
    }
    return r;
}

bool grlex_less(const Monomial& a, const Monomial& b) noexcept
{
    const auto da = a.degree(), db = b.degree();
    if (da != db)
        return da < db;
    for (std::size_t i = kVarCount; i-- > 0;)
        if (a.exp[i] != b.exp[i])
            return a.exp[i] < b.exp[i];
    return false;
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (auto e : m.exp) {
        h ^= e;
        h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
}

Poly::Poly(const Rational& c)
{
    if (!c.is_zero())
        terms_.emplace_back(Monomial{}, c);
}

Poly Poly::var(Var v)
{
    Monomial m;
    m[v] = 1;
    return monomial(Rational(1), m);
}

Poly Poly::monomial(const Rational& c, const Monomial& m)
{
    Poly p;
    if (!c.is_zero())
        p.terms_.emplace_back(m, c);
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms)
{
    Accumulator acc;
    for (auto& [m, c] : terms)
        acc[m] += c.get();
    Poly p;
    p.terms_ = drain(acc);
    return p;
}

Poly Poly::parse(std::string_view text) { return Parser(text).parse(); }

bool Poly::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.degree() == 0);
}

std::optional<Rational> Poly::constant_value() const
{
    if (!is_constant())
        return std::nullopt;
    return constant_term();
}

Rational Poly::constant_term() const
{
    // The constant monomial is the grlex minimum, so it sits last.
    if (!terms_.empty() && terms_.back().first.degree() == 0)
        return terms_.back().second;
    return Rational();
}

unsigned Poly::degree() const noexcept { return terms_.empty() ? 0 : terms_.front().first.degree(); }

unsigned Poly::degree_in(Var v) const noexcept
{
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
        d = std::max<unsigned>(d, m[v]);
    return d;
}

std::vector<Poly> Poly::coefficients_in(Var v) const
{
    std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        rest[v] = 0;
        buckets[m[v]].emplace_back(rest, c);
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) {
        // Removing one variable keeps the relative grlex order within a bucket
        // only up to degree shifts, so re-canonicalise.
        out.push_back(from_terms(std::move(b)));
    }
    return out;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.terms_.empty())
        return *this;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() && j != o.terms_.end()) {
        if (grlex_less(j->first, i->first)) {
            merged.push_back(std::move(*i++));
        } else if (grlex_less(i->first, j->first)) {
            merged.push_back(*j++);
        } else {
            Rational s = i->second + j->second;
            if (!s.is_zero())
                merged.emplace_back(i->first, std::move(s));
            ++i;
            ++j;
        }
    }
    for (; i != terms_.end(); ++i)
        merged.push_back(std::move(*i));
    for (; j != o.terms_.end(); ++j)
        merged.push_back(*j);
    terms_ = std::move(merged);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.second *= c;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return Poly();
    if (a.size() == 1 && a.terms_.front().first.degree() == 0)
        return b * a.terms_.front().second;
    if (b.size() == 1 && b.terms_.front().first.degree() == 0)
        return a * b.terms_.front().second;
    Accumulator acc;
    acc.reserve(a.size() * b.size());
    mpq_class prod;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            mpq_mul(prod.get_mpq_t(), ca.get().get_mpq_t(), cb.get().get_mpq_t());
            acc[ma * mb] += prod;
        }
    }
    Poly r;
    r.terms_ = drain(acc);
    return r;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& t : r.terms_)
        t.second = -t.second;
    return r;
}

Poly Poly::pow(unsigned exponent) const
{
    Poly result(1);
    Poly base = *this;
    while (exponent) {
        if (exponent & 1u)
            result *= base;
        exponent >>= 1;
        if (exponent)
            base *= base;
    }
    return result;
}

Poly Poly::divide_by_var(Var v) const
{
    Poly r = *this;
    for (auto& [m, c] : r.terms_) {
        if (m[v] == 0)
            throw std::domain_error("polynomial not divisible by " + std::string(var_name(v)));
        --m[v];
    }
    // Lowering one exponent uniformly preserves the grlex order.
    return r;
}

Poly Poly::substitute(const Assignment& assignments) const
{
    if (assignments.empty() || terms_.empty())
        return *this;
    // Powers of each substituted polynomial, built on demand.
    std::map<Var, std::vector<Poly>> powers;
    for (const auto& [v, value] : assignments)
        powers[v].push_back(Poly(1));
    auto power_of = [&](Var v, unsigned e) -> const Poly& {
        auto& cache = powers[v];
        while (cache.size() <= e)
            cache.push_back(cache.back() * assignments.at(v));
        return cache[e];
    };

    Accumulator acc;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        Poly factor(c);
        for (const auto& [v, value] : assignments) {
            if (m[v] == 0)
                continue;
            rest[v] = 0;
            factor *= power_of(v, m[v]);
        }
        for (const auto& [fm, fc] : factor.terms_)
            acc[fm * rest] += fc.get();
    }
    Poly r;
    r.terms_ = drain(acc);
    return r;
}

Rational Poly::eval(const Point& point) const
{
    Rational sum;
    for (const auto& [m, c] : terms_) {
        Rational value = c;
        for (Var v : kAllVars) {
            const auto e = m[v];
            if (e == 0)
                continue;
            const auto it = point.find(v);
            if (it == point.end())
                throw UnboundVariable("variable " + std::string(var_name(v)) + " has no value");
            value *= degsheffer::pow(it->second, e);
        }
        sum += value;
    }
    return sum;
}

std::string Poly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c.sign() < 0;
        if (first)
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        first = false;
        const Rational mag = negative ? -c : c;
        const std::string mono = monomial_text(m);
        if (mono.empty())
            s += mag.to_string();
        else if (mag.is_one())
            s += mono;
        else
            s += mag.to_string() + "*" + mono;
    }
    return s;
}

std::string Poly::to_latex() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool negative = c.sign() < 0;
        if (first)
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        first = false;
        const Rational mag = negative ? -c : c;
        const std::string mono = monomial_latex(m);
        std::string coeff;
        if (mag.is_integer())
            coeff = mag.numerator();
        else
            coeff = "\\frac{" + mag.numerator() + "}{" + mag.denominator() + "}";
        if (mono.empty())
            s += coeff;
        else if (mag.is_one())
            s += mono;
        else
            s += coeff + mono;
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

} // namespace degsheffer
