#include "entailguard/manifest.hpp"

#include <cstdlib>
#include <ctime>
#include <fstream>

#include "nlohmann/json.hpp"

namespace entailguard {

std::string iso_timestamp_utc() {
    std::time_t now = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json doc;
    doc["tool_version"] = tool_version;
    doc["command"] = command;
    doc["timestamp"] = timestamp;
    doc["input"] = input_path;
    if (!gold_path.empty()) doc["gold"] = gold_path;
    doc["output"] = output_path;
    doc["config"] = {{"mode", mode},
                     {"threshold", threshold},
                     {"direction", direction},
                     {"decision", decision},
                     {"jobs", jobs},
                     {"strict", strict}};
    doc["backends"] = nlohmann::ordered_json::object();
    for (const auto& [task, desc] : backends)
        doc["backends"][task] = {{"kind", to_string(desc.kind)},
                                 {"identity", desc.identity},
                                 {"multilingual", desc.multilingual}};
    doc["counts"] = {{"records", records},
                     {"dropped", dropped},
                     {"verdicts", verdicts},
                     {"failures", failures}};
    doc["cache"] = {{"query_instances", cache_stats.query_instances},
                    {"unique_pairs", cache_stats.unique_pairs},
                    {"backend_calls", cache_stats.backend_calls},
                    {"cache_hits", cache_stats.cache_hits}};
    doc["warnings"] = warnings;
    return doc.dump(2) + "\n";
}

void RunManifest::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("manifest: cannot write " + path);
    out << to_json();
}

}  // namespace entailguard
