#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "entailguard/backend.hpp"
#include "entailguard/dataset.hpp"

namespace entailguard {

// Uni/bi applies to MT and PG only; DM always checks hyp -> tgt.
enum class Mode { Unidirectional, Bidirectional };

// Direction of the single entailment check in unidirectional mode.
enum class Direction { HypToSrc, SrcToHyp };

enum class Decision { Threshold, Argmax };

// Which ordered pair a judgment belongs to. Premise listed first.
enum class DirectionTag { HypToTgt, SrcToHyp, HypToSrc };

// Which decision rule produced a verdict.
enum class Rule { DmHypEntailsTgt, BidirectionalMin, UnidirectionalHypToSrc, UnidirectionalSrcToHyp };

std::string to_string(Mode mode);
std::string to_string(Direction direction);
std::string to_string(Decision decision);
std::string to_string(DirectionTag tag);
std::string to_string(Rule rule);
Mode parse_mode(const std::string& text);
DirectionTag parse_direction_tag(const std::string& text);

struct DetectionConfig {
    Mode mode = Mode::Bidirectional;
    double threshold = 0.5;  // strict inequality at the boundary
    Direction unidirectional_direction = Direction::HypToSrc;
    Decision decision = Decision::Threshold;
    std::map<TaskKind, BackendDescriptor> backend_by_task;

    void validate() const;  // throws ConfigError
};

// Warnings, not errors: currently one for MT samples routed to a backend
// without declared multilingual capability.
std::vector<std::string> config_warnings(const DetectionConfig& config,
                                         const std::vector<Sample>& samples);

struct Query {
    std::string premise;
    std::string hypothesis;
    DirectionTag direction;
};

struct TaggedJudgment {
    DirectionTag direction;
    EntailmentJudgment judgment;

    bool operator==(const TaggedJudgment&) const = default;
};

struct Verdict {
    std::string sample_id;
    Label label = Label::NotHallucination;
    double score = 0.0;  // predicted p(Hallucination) = 1 - entailment signal
    std::vector<TaggedJudgment> judgments;
    Mode mode = Mode::Bidirectional;
    Rule rule = Rule::DmHypEntailsTgt;
    double threshold = 0.5;
    Decision decision = Decision::Threshold;
    std::optional<std::string> error;  // set on lenient-mode failure verdicts

    bool ok() const { return !error.has_value(); }
};

// The ordered pairs a sample's rule needs:
//   DM                  -> [(hyp, tgt, HypToTgt)]
//   MT/PG bidirectional -> [(src, hyp, SrcToHyp), (hyp, src, HypToSrc)]
//   MT/PG unidirectional-> the single configured direction
std::vector<Query> required_queries(const Sample& sample, const DetectionConfig& config);

// DM: 1 - p_entail(hyp->tgt). MT/PG bidirectional: 1 - min over both
// directions. Unidirectional: 1 - p_entail(configured direction). Throws
// std::invalid_argument on a missing or duplicated direction tag.
double score_sample(const Sample& sample, const std::vector<TaggedJudgment>& judgments,
                    const DetectionConfig& config);

// Threshold: Hallucination iff score > threshold. Argmax: Hallucination iff
// entailment fails to be the strict argmax for any required direction.
Label classify(double score, const std::vector<TaggedJudgment>& judgments,
               const DetectionConfig& config);

// Run-scoped judgment cache keyed on (backend identity, premise,
// hypothesis); safe under concurrent insert/lookup. Share one instance
// across detect_all calls to reuse judgments between modes.
class QueryCache {
  public:
    struct Key {
        std::string backend_identity;
        std::string premise;
        std::string hypothesis;

        bool operator==(const Key&) const = default;
    };

    std::optional<EntailmentJudgment> lookup(const Key& key) const;
    void insert(const Key& key, const EntailmentJudgment& judgment);
    std::size_t size() const;

  private:
    struct KeyHash {
        std::size_t operator()(const Key& k) const;
    };

    mutable std::mutex mutex_;
    std::unordered_map<Key, EntailmentJudgment, KeyHash> entries_;
};

struct DetectOptions {
    int jobs = 1;        // parallelism bound for backend queries
    bool strict = true;  // abort on backend failure vs per-sample failure verdicts
};

struct DetectStats {
    std::size_t query_instances = 0;  // queries over all samples, before dedup
    std::size_t unique_pairs = 0;     // distinct cache keys touched this run
    std::size_t backend_calls = 0;    // judge invocations actually made
    std::size_t cache_hits = 0;       // query instances served without a call
    std::size_t failures = 0;         // failure verdicts emitted (lenient mode)
};

// One verdict per sample, order preserving and deterministic regardless of
// `jobs`. Queries are deduplicated through the cache; in strict mode the
// first failing sample (input order) aborts with BackendError.
std::vector<Verdict> detect_all(const std::vector<Sample>& samples,
                                const std::function<NliBackend&(TaskKind)>& resolve,
                                const DetectionConfig& config, const DetectOptions& options = {},
                                QueryCache* shared_cache = nullptr, DetectStats* stats = nullptr);

}  // namespace entailguard
