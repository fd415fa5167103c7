#include "entailguard/backend.hpp"

#include <cctype>
#include <stdexcept>

namespace entailguard {

namespace {
bool blank(const std::string& s) {
    for (unsigned char c : s)
        if (!std::isspace(c)) return false;
    return true;
}
}  // namespace

void check_pair_nonempty(const std::string& premise, const std::string& hypothesis) {
    if (blank(premise)) throw std::invalid_argument("judge: premise is empty after trim");
    if (blank(hypothesis)) throw std::invalid_argument("judge: hypothesis is empty after trim");
}

std::vector<EntailmentJudgment> NliBackend::judge_batch(const std::vector<TextPair>& pairs) {
    std::vector<EntailmentJudgment> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        try {
            out.push_back(judge(pairs[i].premise, pairs[i].hypothesis));
        } catch (const BackendError& e) {
            throw BackendError("pair " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

NliBackend::BatchOutcome NliBackend::judge_batch_lenient(const std::vector<TextPair>& pairs) {
    BatchOutcome outcome;
    outcome.judgments.resize(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        try {
            outcome.judgments[i] = judge(pairs[i].premise, pairs[i].hypothesis);
        } catch (const BackendError& e) {
            outcome.failures.emplace_back(i, e.what());
        }
    }
    return outcome;
}

}  // namespace entailguard
