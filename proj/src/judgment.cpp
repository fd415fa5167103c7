#include "entailguard/judgment.hpp"

#include <algorithm>
#include <cmath>

namespace entailguard {

namespace {
constexpr double kSumTolerance = 1e-6;
}

bool EntailmentJudgment::valid() const {
    auto in_unit = [](double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; };
    if (!in_unit(p_entailment) || !in_unit(p_neutral) || !in_unit(p_contradiction)) return false;
    return std::fabs(p_entailment + p_neutral + p_contradiction - 1.0) <= kSumTolerance;
}

void validate_judgment(const EntailmentJudgment& j, const std::string& origin) {
    if (!j.valid())
        throw BackendError(origin + ": invalid judgment (" + std::to_string(j.p_entailment) + ", " +
                           std::to_string(j.p_neutral) + ", " + std::to_string(j.p_contradiction) +
                           "): probabilities must lie in [0,1] and sum to 1");
}

EntailmentJudgment softmax3(double entail_logit, double neutral_logit, double contra_logit) {
    const double m = std::max({entail_logit, neutral_logit, contra_logit});
    const double e0 = std::exp(entail_logit - m);
    const double e1 = std::exp(neutral_logit - m);
    const double e2 = std::exp(contra_logit - m);
    const double sum = e0 + e1 + e2;
    return {e0 / sum, e1 / sum, e2 / sum};
}

LabelOrder LabelOrder::from_names(const std::array<std::string, 3>& names) {
    LabelOrder order;
    order.index = {-1, -1, -1};
    for (int pos = 0; pos < 3; ++pos) {
        if (names[pos] == "entailment")
            order.index[0] = pos;
        else if (names[pos] == "neutral")
            order.index[1] = pos;
        else if (names[pos] == "contradiction")
            order.index[2] = pos;
        else
            throw ParseError("label manifest: unknown label '" + names[pos] + "'");
    }
    for (int i = 0; i < 3; ++i)
        if (order.index[i] < 0)
            throw ParseError("label manifest: missing one of entailment/neutral/contradiction");
    return order;
}

EntailmentJudgment judgment_from_logits(const std::array<double, 3>& raw, const LabelOrder& order) {
    return softmax3(raw[static_cast<std::size_t>(order.index[0])],
                    raw[static_cast<std::size_t>(order.index[1])],
                    raw[static_cast<std::size_t>(order.index[2])]);
}

std::string to_string(BackendKind kind) {
    switch (kind) {
        case BackendKind::Mock: return "mock";
        case BackendKind::Local: return "local";
        case BackendKind::Remote: return "remote";
    }
    return "mock";
}

}  // namespace entailguard
