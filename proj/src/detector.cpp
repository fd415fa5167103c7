#include "entailguard/detector.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace entailguard {

std::string to_string(Mode mode) {
    return mode == Mode::Unidirectional ? "unidirectional" : "bidirectional";
}

std::string to_string(Direction direction) {
    return direction == Direction::HypToSrc ? "hyp2src" : "src2hyp";
}

std::string to_string(Decision decision) {
    return decision == Decision::Threshold ? "threshold" : "argmax";
}

std::string to_string(DirectionTag tag) {
    switch (tag) {
        case DirectionTag::HypToTgt: return "hyp_to_tgt";
        case DirectionTag::SrcToHyp: return "src_to_hyp";
        case DirectionTag::HypToSrc: return "hyp_to_src";
    }
    return "hyp_to_tgt";
}

std::string to_string(Rule rule) {
    switch (rule) {
        case Rule::DmHypEntailsTgt: return "dm_hyp_entails_tgt";
        case Rule::BidirectionalMin: return "bidirectional_min";
        case Rule::UnidirectionalHypToSrc: return "unidirectional_hyp_to_src";
        case Rule::UnidirectionalSrcToHyp: return "unidirectional_src_to_hyp";
    }
    return "dm_hyp_entails_tgt";
}

Mode parse_mode(const std::string& text) {
    if (text == "uni" || text == "unidirectional") return Mode::Unidirectional;
    if (text == "bi" || text == "bidirectional") return Mode::Bidirectional;
    throw ParseError("unknown mode '" + text + "' (expected uni or bi)");
}

DirectionTag parse_direction_tag(const std::string& text) {
    if (text == "hyp_to_tgt") return DirectionTag::HypToTgt;
    if (text == "src_to_hyp") return DirectionTag::SrcToHyp;
    if (text == "hyp_to_src") return DirectionTag::HypToSrc;
    throw ParseError("unknown direction tag '" + text + "'");
}

void DetectionConfig::validate() const {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ConfigError("threshold must lie strictly between 0 and 1");
    for (TaskKind task : {TaskKind::DM, TaskKind::MT, TaskKind::PG}) {
        auto it = backend_by_task.find(task);
        if (it == backend_by_task.end())
            throw ConfigError("no backend configured for task " + to_string(task));
        if (it->second.kind != BackendKind::Mock && it->second.identity.empty())
            throw ConfigError("backend for task " + to_string(task) + " lacks an identity");
    }
}

std::vector<std::string> config_warnings(const DetectionConfig& config,
                                         const std::vector<Sample>& samples) {
    std::vector<std::string> warnings;
    const bool has_mt = std::any_of(samples.begin(), samples.end(),
                                    [](const Sample& s) { return s.task == TaskKind::MT; });
    if (has_mt) {
        auto it = config.backend_by_task.find(TaskKind::MT);
        if (it != config.backend_by_task.end() && !it->second.multilingual)
            warnings.push_back("MT samples routed to backend '" + it->second.identity +
                               "' without declared multilingual capability");
    }
    return warnings;
}

std::vector<Query> required_queries(const Sample& sample, const DetectionConfig& config) {
    if (sample.task == TaskKind::DM)
        return {{sample.hyp, sample.tgt, DirectionTag::HypToTgt}};

    if (config.mode == Mode::Bidirectional)
        return {{sample.src, sample.hyp, DirectionTag::SrcToHyp},
                {sample.hyp, sample.src, DirectionTag::HypToSrc}};

    if (config.unidirectional_direction == Direction::SrcToHyp)
        return {{sample.src, sample.hyp, DirectionTag::SrcToHyp}};
    return {{sample.hyp, sample.src, DirectionTag::HypToSrc}};
}

namespace {

double entailment_for(const std::vector<TaggedJudgment>& judgments, DirectionTag tag) {
    const TaggedJudgment* found = nullptr;
    for (const auto& j : judgments) {
        if (j.direction != tag) continue;
        if (found)
            throw std::invalid_argument("duplicated direction tag " + to_string(tag));
        found = &j;
    }
    if (!found) throw std::invalid_argument("missing direction tag " + to_string(tag));
    return found->judgment.p_entailment;
}

Rule rule_for(const Sample& sample, const DetectionConfig& config) {
    if (sample.task == TaskKind::DM) return Rule::DmHypEntailsTgt;
    if (config.mode == Mode::Bidirectional) return Rule::BidirectionalMin;
    return config.unidirectional_direction == Direction::SrcToHyp
               ? Rule::UnidirectionalSrcToHyp
               : Rule::UnidirectionalHypToSrc;
}

}  // namespace

double score_sample(const Sample& sample, const std::vector<TaggedJudgment>& judgments,
                    const DetectionConfig& config) {
    switch (rule_for(sample, config)) {
        case Rule::DmHypEntailsTgt:
            return 1.0 - entailment_for(judgments, DirectionTag::HypToTgt);
        case Rule::BidirectionalMin:
            return 1.0 - std::min(entailment_for(judgments, DirectionTag::SrcToHyp),
                                  entailment_for(judgments, DirectionTag::HypToSrc));
        case Rule::UnidirectionalSrcToHyp:
            return 1.0 - entailment_for(judgments, DirectionTag::SrcToHyp);
        case Rule::UnidirectionalHypToSrc:
            return 1.0 - entailment_for(judgments, DirectionTag::HypToSrc);
    }
    throw std::logic_error("unreachable rule");
}

Label classify(double score, const std::vector<TaggedJudgment>& judgments,
               const DetectionConfig& config) {
    if (config.decision == Decision::Threshold)
        return score > config.threshold ? Label::Hallucination : Label::NotHallucination;

    // Argmax: every required direction must classify as entailment, with
    // ties broken toward non-entailment.
    for (const auto& tagged : judgments) {
        const auto& j = tagged.judgment;
        const bool entail_wins = j.p_entailment > j.p_neutral && j.p_entailment > j.p_contradiction;
        if (!entail_wins) return Label::Hallucination;
    }
    return Label::NotHallucination;
}

std::optional<EntailmentJudgment> QueryCache::lookup(const Key& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void QueryCache::insert(const Key& key, const EntailmentJudgment& judgment) {
    std::lock_guard<std::mutex> lock(mutex_);
    entries_[key] = judgment;
}

std::size_t QueryCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

std::size_t QueryCache::KeyHash::operator()(const Key& k) const {
    auto mix = [](std::size_t seed, std::size_t h) {
        return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    };
    std::size_t h = std::hash<std::string>{}(k.backend_identity);
    h = mix(h, std::hash<std::string>{}(k.premise));
    h = mix(h, std::hash<std::string>{}(k.hypothesis));
    return h;
}

std::vector<Verdict> detect_all(const std::vector<Sample>& samples,
                                const std::function<NliBackend&(TaskKind)>& resolve,
                                const DetectionConfig& config, const DetectOptions& options,
                                QueryCache* shared_cache, DetectStats* stats) {
    config.validate();

    QueryCache local_cache;
    QueryCache& cache = shared_cache ? *shared_cache : local_cache;
    DetectStats run_stats;

    struct PlannedQuery {
        QueryCache::Key key;
        DirectionTag direction;
        std::size_t miss_index = SIZE_MAX;  // SIZE_MAX when served from cache
    };
    std::vector<std::vector<PlannedQuery>> plan(samples.size());

    // Dedup pass: first occurrence of a key becomes a miss slot, later ones
    // reuse it. Everything already in the cache is a hit.
    struct Miss {
        QueryCache::Key key;
        TaskKind task;
    };
    std::vector<Miss> misses;
    std::unordered_map<std::string, std::size_t> miss_index;  // serialized key -> slot
    auto serialize_key = [](const QueryCache::Key& k) {
        std::string s;
        s.reserve(k.backend_identity.size() + k.premise.size() + k.hypothesis.size() + 2);
        s += k.backend_identity;
        s += '\x1f';
        s += k.premise;
        s += '\x1f';
        s += k.hypothesis;
        return s;
    };

    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Sample& sample = samples[i];
        const std::string backend_id = resolve(sample.task).descriptor().identity;
        for (const Query& q : required_queries(sample, config)) {
            PlannedQuery planned{{backend_id, q.premise, q.hypothesis}, q.direction, SIZE_MAX};
            ++run_stats.query_instances;
            if (cache.lookup(planned.key)) {
                ++run_stats.cache_hits;
            } else {
                const std::string ser = serialize_key(planned.key);
                auto [it, inserted] = miss_index.emplace(ser, misses.size());
                if (inserted)
                    misses.push_back({planned.key, sample.task});
                else
                    ++run_stats.cache_hits;
                planned.miss_index = it->second;
            }
            plan[i].push_back(std::move(planned));
        }
    }
    run_stats.unique_pairs = miss_index.size();

    // Evaluate misses, bounded by options.jobs. Each miss is independent;
    // errors are captured per miss and attributed later in input order.
    std::vector<std::optional<EntailmentJudgment>> results(misses.size());
    std::vector<std::string> errors(misses.size());
    std::atomic<bool> abort_flag{false};

    auto eval_miss = [&](std::size_t m) {
        if (options.strict && abort_flag) {
            errors[m] = "skipped after earlier backend failure";
            return;
        }
        try {
            results[m] = resolve(misses[m].task).judge(misses[m].key.premise,
                                                       misses[m].key.hypothesis);
        } catch (const BackendError& e) {
            errors[m] = e.what();
            abort_flag = true;
        }
    };

    const auto n_misses = static_cast<std::ptrdiff_t>(misses.size());
    if (options.jobs > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(options.jobs)
        for (std::ptrdiff_t m = 0; m < n_misses; ++m) eval_miss(static_cast<std::size_t>(m));
#else
        for (std::ptrdiff_t m = 0; m < n_misses; ++m) eval_miss(static_cast<std::size_t>(m));
#endif
    } else {
        for (std::ptrdiff_t m = 0; m < n_misses; ++m) eval_miss(static_cast<std::size_t>(m));
    }
    run_stats.backend_calls = misses.size();

    for (std::size_t m = 0; m < misses.size(); ++m)
        if (results[m]) cache.insert(misses[m].key, *results[m]);

    // Assembly in input order keeps verdict order and error attribution
    // deterministic regardless of completion order.
    std::vector<Verdict> verdicts;
    verdicts.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Sample& sample = samples[i];
        Verdict v;
        v.sample_id = sample.id;
        v.mode = config.mode;
        v.rule = rule_for(sample, config);
        v.threshold = config.threshold;
        v.decision = config.decision;

        std::string failure;
        for (const auto& pq : plan[i]) {
            std::optional<EntailmentJudgment> judgment;
            if (pq.miss_index != SIZE_MAX && results[pq.miss_index])
                judgment = results[pq.miss_index];
            else if (pq.miss_index == SIZE_MAX)
                judgment = cache.lookup(pq.key);
            if (judgment) {
                v.judgments.push_back({pq.direction, *judgment});
            } else {
                failure = pq.miss_index != SIZE_MAX ? errors[pq.miss_index] : "judgment missing";
                break;
            }
        }

        if (!failure.empty()) {
            if (options.strict)
                throw BackendError("sample " + sample.id + ": " + failure);
            v.error = failure;
            v.judgments.clear();
            ++run_stats.failures;
        } else {
            v.score = score_sample(sample, v.judgments, config);
            v.label = classify(v.score, v.judgments, config);
        }
        verdicts.push_back(std::move(v));
    }

    if (stats) *stats = run_stats;
    return verdicts;
}

}  // namespace entailguard
