#include "entailguard/report.hpp"

#include <cstdio>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace entailguard {

namespace {

std::string six_places(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string full_precision(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

void check_rectangular(const ComparisonTable& table) {
    if (table.cells.size() != table.row_labels.size() * table.col_labels.size())
        throw std::invalid_argument("comparison table is not rectangular");
}

std::string render_markdown(const ComparisonTable& table) {
    std::string out;
    if (!table.caption.empty()) out += table.caption + "\n\n";
    out += "| Model |";
    for (const auto& col : table.col_labels) out += " " + col + " |";
    out += "\n| --- |";
    for (std::size_t c = 0; c < table.col_labels.size(); ++c) out += " --- |";
    out += "\n";
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        out += "| " + table.row_labels[r] + " |";
        for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
            const auto& cell = table.cell(r, c);
            out += " " + (cell ? six_places(*cell) : std::string("-")) + " |";
        }
        out += "\n";
    }
    return out;
}

std::string render_csv(const ComparisonTable& table) {
    std::string out = "model";
    for (const auto& col : table.col_labels)
        out += "," + csv_quote(col) + "," + csv_quote(col + "_raw");
    out += "\r\n";
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        out += csv_quote(table.row_labels[r]);
        for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
            const auto& cell = table.cell(r, c);
            if (cell)
                out += "," + six_places(*cell) + "," + full_precision(*cell);
            else
                out += ",-,";
        }
        out += "\r\n";
    }
    return out;
}

std::string render_json(const ComparisonTable& table) {
    nlohmann::ordered_json doc;
    doc["caption"] = table.caption;
    doc["columns"] = table.col_labels;
    doc["rows"] = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        nlohmann::ordered_json row;
        row["label"] = table.row_labels[r];
        row["cells"] = nlohmann::ordered_json::array();
        row["formatted"] = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < table.col_labels.size(); ++c) {
            const auto& cell = table.cell(r, c);
            if (cell) {
                row["cells"].push_back(*cell);
                row["formatted"].push_back(six_places(*cell));
            } else {
                row["cells"].push_back(nullptr);
                row["formatted"].push_back("-");
            }
        }
        doc["rows"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

}  // namespace

ReportFormat parse_report_format(const std::string& text) {
    if (text == "md" || text == "markdown") return ReportFormat::Markdown;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "json") return ReportFormat::Json;
    throw ParseError("unknown report format '" + text + "' (expected md, csv, or json)");
}

std::string format_extension(ReportFormat format) {
    switch (format) {
        case ReportFormat::Markdown: return ".md";
        case ReportFormat::Csv: return ".csv";
        case ReportFormat::Json: return ".json";
    }
    return ".md";
}

std::string render(const ComparisonTable& table, ReportFormat format) {
    check_rectangular(table);
    switch (format) {
        case ReportFormat::Markdown: return render_markdown(table);
        case ReportFormat::Csv: return render_csv(table);
        case ReportFormat::Json: return render_json(table);
    }
    return {};
}

ComparisonTable table_from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("table: malformed JSON: ") + e.what());
    }
    ComparisonTable table;
    table.caption = doc.value("caption", "");
    for (const auto& col : doc.at("columns")) table.col_labels.push_back(col.get<std::string>());
    for (const auto& row : doc.at("rows")) {
        table.row_labels.push_back(row.at("label").get<std::string>());
        const auto& cells = row.at("cells");
        if (cells.size() != table.col_labels.size())
            throw ParseError("table: row '" + table.row_labels.back() +
                             "' has the wrong number of cells");
        for (const auto& cell : cells) {
            if (cell.is_null())
                table.cells.emplace_back(std::nullopt);
            else
                table.cells.emplace_back(cell.get<double>());
        }
    }
    return table;
}

namespace {

template <typename KeyPart>
ComparisonTable build_comparison(const std::map<std::pair<std::string, KeyPart>,
                                                EvalReport>& reports,
                                 const std::vector<std::pair<KeyPart, std::string>>& columns,
                                 std::string caption) {
    if (reports.empty()) throw std::invalid_argument("build_comparison: no reports");

    ComparisonTable table;
    table.caption = std::move(caption);
    for (const auto& [part, label] : columns) table.col_labels.push_back(label);
    for (const auto& [key, report] : reports)
        if (table.row_labels.empty() || table.row_labels.back() != key.first)
            table.row_labels.push_back(key.first);  // std::map keeps identities sorted

    table.cells.assign(table.row_labels.size() * table.col_labels.size(), std::nullopt);
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            auto it = reports.find({table.row_labels[r], columns[c].first});
            if (it != reports.end() && it->second.overall.n > 0)
                table.cell(r, c) = it->second.overall.accuracy;
        }
    }
    return table;
}

}  // namespace

ComparisonTable build_mode_comparison(
    const std::map<std::pair<std::string, Mode>, EvalReport>& reports, std::string caption) {
    return build_comparison(reports,
                            {{Mode::Unidirectional, "Unidirectional"},
                             {Mode::Bidirectional, "Bidirectional"}},
                            std::move(caption));
}

ComparisonTable build_task_comparison(
    const std::map<std::pair<std::string, TaskKind>, EvalReport>& reports, std::string caption) {
    return build_comparison(reports,
                            {{TaskKind::DM, "DM"}, {TaskKind::MT, "MT"}, {TaskKind::PG, "PG"}},
                            std::move(caption));
}

}  // namespace entailguard
