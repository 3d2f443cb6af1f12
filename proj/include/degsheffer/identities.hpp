#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "degsheffer/poly.hpp"
#include "degsheffer/series.hpp"

namespace degsheffer {

/// One side-by-side comparison produced by an identity at a given n. Cases
/// that quantify over several providers or (m, l) pairs emit one labelled
/// instance per choice.
struct Instance {
    std::string label;
    Poly lhs;
    Poly rhs;
};

/// instances[n] holds the comparisons for index n, n = 0..max_n.
using Evaluation = std::vector<std::vector<Instance>>;

struct IdentityCase {
    std::string id;
    std::string description;
    /// Symbolic variables the identity is quantified over.
    std::vector<Var> params;
    /// Extra truncation order the recipe needs beyond max_n.
    std::size_t order_margin = 0;
    std::function<Evaluation(std::size_t max_n)> evaluate;
};

struct VerifyConfig {
    /// Truncation order; max_n + order_margin must not exceed it.
    std::size_t order = kDefaultOrder;
    /// Values substituted into both sides before comparison. Empty keeps
    /// every parameter symbolic.
    Assignment pins;
    /// Run cases concurrently in verify_all.
    bool parallel = true;
};

struct Mismatch {
    std::size_t n = 0;
    std::string label;
    Poly lhs;
    Poly rhs;
    /// lhs - rhs.
    Poly diff;
};

struct Report {
    std::string id;
    std::size_t max_n = 0;
    bool equal = false;
    std::optional<Mismatch> first_mismatch;
    /// Parameters left unpinned during the comparison.
    std::vector<Var> symbolic;
};

class Registry {
public:
    /// Every identity the library knows about, in a fixed order.
    static Registry standard();

    void add(IdentityCase c);
    /// Replaces the case with the same id; throws UnknownIdentity if absent.
    void replace(IdentityCase c);
    /// Resolves aliases such as "thm2.3-bernoulli"; throws UnknownIdentity.
    const IdentityCase& find(std::string_view id) const;
    bool contains(std::string_view id) const;
    const std::vector<IdentityCase>& cases() const noexcept { return cases_; }
    std::vector<std::string> ids() const;

    /// Ids matching any of the shell-style patterns, in registry order.
    std::vector<std::string> select(const std::vector<std::string>& patterns) const;

private:
    std::vector<IdentityCase> cases_;
};

Report verify(const Registry& registry, std::string_view id, std::size_t max_n, const VerifyConfig& config = {});

/// Runs every case whose id matches one of `patterns`; an empty pattern list
/// selects nothing. Reports keep registry order.
std::vector<Report> verify_all(const Registry& registry, const std::vector<std::string>& patterns,
                               std::size_t max_n, const VerifyConfig& config = {});

/// Same registry with one case's right-hand side perturbed by +1 at every n.
/// Used to exercise the failure path.
Registry with_fault(const Registry& registry, std::string_view id);

/// Shell-style glob with * and ?.
bool glob_match(std::string_view pattern, std::string_view text) noexcept;

} // namespace degsheffer
