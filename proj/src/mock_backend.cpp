#include "entailguard/mock_backend.hpp"

#include <stdexcept>

#include "nlohmann/json.hpp"

namespace entailguard {

std::size_t MockBackend::PairHash::operator()(const TextPair& p) const {
    const std::size_t h1 = std::hash<std::string>{}(p.premise);
    const std::size_t h2 = std::hash<std::string>{}(p.hypothesis);
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

MockBackend::MockBackend(std::vector<Entry> entries, EntailmentJudgment miss_default,
                         std::string identity)
    : miss_default_(miss_default), identity_(std::move(identity)) {
    if (!miss_default_.valid())
        throw std::invalid_argument("mock backend: default triple violates judgment invariants");
    for (auto& e : entries) {
        if (!e.judgment.valid())
            throw std::invalid_argument("mock backend: table triple for (\"" + e.pair.premise +
                                        "\", \"" + e.pair.hypothesis +
                                        "\") violates judgment invariants");
        table_[std::move(e.pair)] = e.judgment;
    }
}

MockBackend MockBackend::from_json(std::string_view json_text, std::string identity) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("mock table: malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw ParseError("mock table: expected an object with an 'entries' array");

    auto read_triple = [](const nlohmann::json& obj) -> EntailmentJudgment {
        for (const char* key : {"entailment", "neutral", "contradiction"})
            if (!obj.contains(key) || !obj[key].is_number())
                throw ParseError(std::string("mock table: entry missing numeric '") + key + "'");
        return {obj["entailment"].get<double>(), obj["neutral"].get<double>(),
                obj["contradiction"].get<double>()};
    };

    std::vector<Entry> entries;
    for (const auto& e : doc["entries"]) {
        if (!e.is_object() || !e.contains("premise") || !e.contains("hypothesis"))
            throw ParseError("mock table: entry needs 'premise' and 'hypothesis'");
        entries.push_back({{e["premise"].get<std::string>(), e["hypothesis"].get<std::string>()},
                           read_triple(e)});
    }
    EntailmentJudgment miss_default{0.1, 0.8, 0.1};
    if (doc.contains("default")) miss_default = read_triple(doc["default"]);

    try {
        return MockBackend(std::move(entries), miss_default, std::move(identity));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

BackendDescriptor MockBackend::descriptor() const {
    // The mock answers any language pair it is configured with.
    return {BackendKind::Mock, identity_, /*multilingual=*/true};
}

EntailmentJudgment MockBackend::judge(const std::string& premise, const std::string& hypothesis) {
    check_pair_nonempty(premise, hypothesis);
    if (auto it = table_.find(TextPair{premise, hypothesis}); it != table_.end()) return it->second;
    if (premise == hypothesis) return {1.0, 0.0, 0.0};
    return miss_default_;
}

}  // namespace entailguard
