#pragma once

#include <string_view>
#include <unordered_map>

#include "entailguard/backend.hpp"

namespace entailguard {

// Deterministic table-backed backend. Lookup on the exact
// (premise, hypothesis) strings; on a miss, identical texts map to
// (1, 0, 0) and anything else to a fixed configurable default.
class MockBackend : public NliBackend {
  public:
    struct Entry {
        TextPair pair;
        EntailmentJudgment judgment;
    };

    // Throws std::invalid_argument when any triple violates the judgment
    // invariants (including the default triple).
    explicit MockBackend(std::vector<Entry> entries = {},
                         EntailmentJudgment miss_default = {0.1, 0.8, 0.1},
                         std::string identity = "mock");

    // Table file: {"entries":[{"premise","hypothesis","entailment","neutral",
    // "contradiction"},...], "default":{...}} with "default" optional.
    static MockBackend from_json(std::string_view json_text, std::string identity = "mock");

    BackendDescriptor descriptor() const override;
    EntailmentJudgment judge(const std::string& premise, const std::string& hypothesis) override;

    std::size_t table_size() const { return table_.size(); }

  private:
    struct PairHash {
        std::size_t operator()(const TextPair& p) const;
    };

    std::unordered_map<TextPair, EntailmentJudgment, PairHash> table_;
    EntailmentJudgment miss_default_;
    std::string identity_;
};

}  // namespace entailguard
