#include "entailguard/dataset.hpp"

#include <algorithm>
#include <cctype>

namespace entailguard {

namespace {

std::string trim(std::string_view s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string require_string(const nlohmann::json& record, const char* key, std::size_t index) {
    auto it = record.find(key);
    if (it == record.end())
        throw ParseError("record " + std::to_string(index) + ": missing required key '" + key + "'");
    if (!it->is_string())
        throw ParseError("record " + std::to_string(index) + ": key '" + key + "' must be a string");
    return it->get<std::string>();
}

Sample parse_record(const nlohmann::json& record, std::size_t index) {
    if (!record.is_object())
        throw ParseError("record " + std::to_string(index) + ": not a JSON object");

    Sample sample;

    const std::string task_str = require_string(record, "task", index);
    try {
        sample.task = parse_task(task_str);
    } catch (const ParseError& e) {
        throw ParseError("record " + std::to_string(index) + ": " + e.what());
    }

    sample.hyp = require_string(record, "hyp", index);
    if (trim(sample.hyp).empty())
        throw ParseError("record " + std::to_string(index) + ": 'hyp' is empty");

    if (auto it = record.find("src"); it != record.end()) {
        if (!it->is_string())
            throw ParseError("record " + std::to_string(index) + ": key 'src' must be a string");
        sample.src = it->get<std::string>();
    }
    if (auto it = record.find("tgt"); it != record.end()) {
        if (!it->is_string())
            throw ParseError("record " + std::to_string(index) + ": key 'tgt' must be a string");
        sample.tgt = it->get<std::string>();
    }

    // The decision rules consume tgt for DM and src for MT/PG; only the
    // consumed text is required to exist.
    if (sample.task == TaskKind::DM) {
        if (record.find("tgt") == record.end())
            throw ParseError("record " + std::to_string(index) + ": missing required key 'tgt'");
        if (trim(sample.tgt).empty())
            throw ParseError("record " + std::to_string(index) + ": 'tgt' is empty for a DM record");
    } else {
        if (record.find("src") == record.end())
            throw ParseError("record " + std::to_string(index) + ": missing required key 'src'");
        if (trim(sample.src).empty())
            throw ParseError("record " + std::to_string(index) + ": 'src' is empty for a " +
                             to_string(sample.task) + " record");
    }

    if (auto it = record.find("model"); it != record.end()) {
        if (!it->is_string())
            throw ParseError("record " + std::to_string(index) + ": key 'model' must be a string");
        sample.model = it->get<std::string>();
    }

    if (auto it = record.find("id"); it != record.end()) {
        if (it->is_string())
            sample.id = it->get<std::string>();
        else if (it->is_number_integer())
            sample.id = std::to_string(it->get<long long>());
        else
            throw ParseError("record " + std::to_string(index) + ": key 'id' must be a string");
    } else {
        sample.id = std::to_string(index);
    }

    const bool has_label = record.contains("label");
    const bool has_p = record.contains("p(Hallucination)") || record.contains("p_hallucination");
    if (has_label != has_p)
        throw ParseError("record " + std::to_string(index) +
                         ": gold annotation incomplete (need both 'label' and 'p(Hallucination)')");
    if (has_label) {
        GoldAnnotation gold;
        try {
            gold.label = parse_label(require_string(record, "label", index));
        } catch (const ParseError& e) {
            throw ParseError("record " + std::to_string(index) + ": " + e.what());
        }
        const auto& p = record.contains("p(Hallucination)") ? record.at("p(Hallucination)")
                                                            : record.at("p_hallucination");
        if (!p.is_number())
            throw ParseError("record " + std::to_string(index) + ": p(Hallucination) must be a number");
        gold.p_hallucination = p.get<double>();
        if (gold.p_hallucination < 0.0 || gold.p_hallucination > 1.0)
            throw ParseError("record " + std::to_string(index) + ": p(Hallucination) outside [0,1]");
        sample.gold = gold;
    }

    static const char* known_keys[] = {"task",  "src", "tgt",   "hyp",
                                       "model", "id",  "label", "p(Hallucination)",
                                       "p_hallucination"};
    for (auto it = record.begin(); it != record.end(); ++it) {
        if (std::find_if(std::begin(known_keys), std::end(known_keys),
                         [&](const char* k) { return it.key() == k; }) == std::end(known_keys))
            sample.extras[it.key()] = it.value();
    }

    return sample;
}

}  // namespace

std::string to_string(TaskKind task) {
    switch (task) {
        case TaskKind::DM: return "DM";
        case TaskKind::MT: return "MT";
        case TaskKind::PG: return "PG";
    }
    return "DM";
}

std::string to_string(Label label) {
    return label == Label::Hallucination ? "Hallucination" : "Not Hallucination";
}

TaskKind parse_task(std::string_view text) {
    if (text == "DM") return TaskKind::DM;
    if (text == "MT") return TaskKind::MT;
    if (text == "PG") return TaskKind::PG;
    throw ParseError("unknown task string '" + std::string(text) + "'");
}

Label parse_label(std::string_view text) {
    const std::string norm = lower(text);
    if (norm == "hallucination") return Label::Hallucination;
    if (norm == "not hallucination") return Label::NotHallucination;
    throw ParseError("unknown label string '" + std::string(text) + "'");
}

bool GoldAnnotation::majority_consistent() const {
    return (label == Label::Hallucination) == (p_hallucination > 0.5);
}

std::vector<Sample> parse_dataset(std::string_view raw, bool strict, ParseStats* stats) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("input is not a top-level JSON array");

    std::vector<Sample> samples;
    samples.reserve(doc.size());
    ParseStats local;
    local.records = doc.size();
    for (std::size_t i = 0; i < doc.size(); ++i) {
        try {
            samples.push_back(parse_record(doc[i], i));
        } catch (const ParseError&) {
            if (strict) throw;
            ++local.dropped;
        }
    }
    if (stats) *stats = local;
    return samples;
}

std::string serialize_dataset(const std::vector<Sample>& samples) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& s : samples) {
        nlohmann::ordered_json rec;
        rec["id"] = s.id;
        rec["task"] = to_string(s.task);
        if (!s.src.empty()) rec["src"] = s.src;
        if (!s.tgt.empty()) rec["tgt"] = s.tgt;
        rec["hyp"] = s.hyp;
        if (!s.model.empty()) rec["model"] = s.model;
        if (s.gold) {
            rec["label"] = to_string(s.gold->label);
            rec["p(Hallucination)"] = s.gold->p_hallucination;
        }
        // extras iterate alphabetically (nlohmann::json is map-backed)
        for (auto it = s.extras.begin(); it != s.extras.end(); ++it) rec[it.key()] = it.value();
        out.push_back(std::move(rec));
    }
    return out.dump(2) + "\n";
}

std::map<TaskKind, std::vector<Sample>> split_by_task(const std::vector<Sample>& samples) {
    std::map<TaskKind, std::vector<Sample>> by_task;
    by_task[TaskKind::DM];
    by_task[TaskKind::MT];
    by_task[TaskKind::PG];
    for (const auto& s : samples) by_task[s.task].push_back(s);
    return by_task;
}

}  // namespace entailguard
