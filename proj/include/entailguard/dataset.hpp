#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entailguard/errors.hpp"
#include "nlohmann/json.hpp"

namespace entailguard {

enum class TaskKind { DM, MT, PG };

enum class Label { Hallucination, NotHallucination };

std::string to_string(TaskKind task);
std::string to_string(Label label);

// Throws ParseError on anything other than "DM", "MT", "PG".
TaskKind parse_task(std::string_view text);

// Accepts "Hallucination" / "Not Hallucination" case-insensitively.
Label parse_label(std::string_view text);

struct GoldAnnotation {
    Label label = Label::NotHallucination;
    double p_hallucination = 0.0;  // proportion of annotators, in [0,1]

    // Stored label and probability are both authoritative; a mismatch with
    // majority semantics (p > 0.5) is a diagnostic, never an error.
    bool majority_consistent() const;

    bool operator==(const GoldAnnotation&) const = default;
};

struct Sample {
    std::string id;    // assigned from the record index when absent
    TaskKind task = TaskKind::DM;
    std::string src;
    std::string tgt;
    std::string hyp;
    std::string model;  // empty means model-agnostic
    std::optional<GoldAnnotation> gold;
    nlohmann::json extras = nlohmann::json::object();  // unknown keys, preserved verbatim

    bool operator==(const Sample&) const = default;
};

struct ParseStats {
    std::size_t records = 0;  // elements seen in the input array
    std::size_t dropped = 0;  // invalid records skipped in lenient mode
};

// Parses a top-level JSON array of generation records. In strict mode the
// first invalid record aborts with ParseError; in lenient mode invalid
// records are dropped and counted in `stats`. Unknown keys land in extras.
std::vector<Sample> parse_dataset(std::string_view raw, bool strict, ParseStats* stats = nullptr);

// Canonical serialization. parse(serialize(parse(x))) == parse(x) for any
// valid input: known keys in fixed order, extras flattened back as
// alphabetically sorted top-level keys, empty optionals omitted.
std::string serialize_dataset(const std::vector<Sample>& samples);

// Partition preserving input order within each task; all three keys present.
std::map<TaskKind, std::vector<Sample>> split_by_task(const std::vector<Sample>& samples);

}  // namespace entailguard
