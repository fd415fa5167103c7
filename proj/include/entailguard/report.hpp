#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entailguard/metrics.hpp"

namespace entailguard {

// Rectangular accuracy table: rows are backend identities, columns either
// (Unidirectional, Bidirectional) or (DM, MT, PG). Absent cells render "-".
struct ComparisonTable {
    std::string caption;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::optional<double>> cells;  // row-major, rows x cols

    std::optional<double>& cell(std::size_t row, std::size_t col) {
        return cells[row * col_labels.size() + col];
    }
    const std::optional<double>& cell(std::size_t row, std::size_t col) const {
        return cells[row * col_labels.size() + col];
    }

    bool operator==(const ComparisonTable&) const = default;
};

enum class ReportFormat { Markdown, Csv, Json };

ReportFormat parse_report_format(const std::string& text);
std::string format_extension(ReportFormat format);

// Deterministic rendering; numeric cells printed with exactly 6 decimal
// places, absent cells as "-". CSV carries a raw full-precision column next
// to each formatted one (RFC-4180 quoting); JSON round-trips through
// table_from_json to an equal table.
std::string render(const ComparisonTable& table, ReportFormat format);

ComparisonTable table_from_json(std::string_view text);

// Rows sorted by backend identity, columns in canonical order; cells take
// each report's overall accuracy.
ComparisonTable build_mode_comparison(
    const std::map<std::pair<std::string, Mode>, EvalReport>& reports, std::string caption);

ComparisonTable build_task_comparison(
    const std::map<std::pair<std::string, TaskKind>, EvalReport>& reports, std::string caption);

}  // namespace entailguard
