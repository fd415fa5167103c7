#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entailguard/judgment.hpp"

namespace entailguard {

struct TextPair {
    std::string premise;
    std::string hypothesis;

    bool operator==(const TextPair&) const = default;
};

// Ordered-pair entailment judgments behind a uniform contract. All
// implementations must be safe for concurrent callers; Local may serialize
// access to its runtime internally.
class NliBackend {
  public:
    virtual ~NliBackend() = default;

    virtual BackendDescriptor descriptor() const = 0;

    // Both texts must be non-empty after whitespace trim
    // (std::invalid_argument otherwise). Operational failures throw
    // BackendError: backend unavailable, or input still over the hard
    // length limit after the truncation policy ran.
    virtual EntailmentJudgment judge(const std::string& premise, const std::string& hypothesis) = 0;

    // Strict batching: any per-pair failure aborts with the pair index
    // named in the message. result[i] equals judge(pairs[i]) exactly for
    // Mock and Remote; within 1e-5 per probability for Local.
    virtual std::vector<EntailmentJudgment> judge_batch(const std::vector<TextPair>& pairs);

    struct BatchOutcome {
        std::vector<std::optional<EntailmentJudgment>> judgments;      // nullopt where failed
        std::vector<std::pair<std::size_t, std::string>> failures;     // (index, reason)
    };

    // Lenient batching: one bad pair must not poison the rest.
    BatchOutcome judge_batch_lenient(const std::vector<TextPair>& pairs);
};

// Precondition shared by every backend.
void check_pair_nonempty(const std::string& premise, const std::string& hypothesis);

}  // namespace entailguard
