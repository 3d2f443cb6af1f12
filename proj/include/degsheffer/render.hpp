#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "degsheffer/identities.hpp"
#include "degsheffer/poly.hpp"
#include "degsheffer/randvar.hpp"

namespace degsheffer {

enum class OutputFormat { json, csv, latex, plain };

std::optional<OutputFormat> parse_format(std::string_view name) noexcept;

struct TableRow {
    std::size_t n = 0;
    std::optional<std::size_t> k;  // second index (stirling1 only)
    Poly value;
};

struct TableDoc {
    std::string family;
    /// Parameter name -> textual value, echoed into the output.
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<TableRow> rows;
};

struct McDoc {
    std::string identity;
    std::string provider;
    std::size_t n = 0;
    Rational lambda;
    Rational x;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    McEstimate result;
};

std::string render_table(const TableDoc& doc, OutputFormat format);
std::string render_reports(const std::vector<Report>& reports, OutputFormat format);
std::string render_mc(const McDoc& doc, OutputFormat format);

/// Inverse of the JSON table rendering: rows keyed by (n, k).
TableDoc parse_table_json(std::string_view text);

} // namespace degsheffer
