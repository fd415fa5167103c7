#pragma once

#include <array>
#include <string>

#include "entailguard/errors.hpp"

namespace entailguard {

// Probability triple over {entailment, neutral, contradiction} for one
// ordered (premise, hypothesis) pair.
struct EntailmentJudgment {
    double p_entailment = 0.0;
    double p_neutral = 0.0;
    double p_contradiction = 0.0;

    // Each component in [0,1] and the sum within 1e-6 of 1.
    bool valid() const;

    bool operator==(const EntailmentJudgment&) const = default;
};

// Throws BackendError naming `origin` when the triple violates its invariants.
void validate_judgment(const EntailmentJudgment& j, const std::string& origin);

// Numerically stable softmax over three logits, computed in double.
// Invariant under shifting all logits by a constant.
EntailmentJudgment softmax3(double entail_logit, double neutral_logit, double contra_logit);

// Label order of a classifier head. Maps raw logit positions onto the
// (entailment, neutral, contradiction) convention used everywhere else.
struct LabelOrder {
    std::array<int, 3> index{};  // index[0] = logit position of "entailment", etc.

    // Accepts any permutation of the three label names.
    static LabelOrder from_names(const std::array<std::string, 3>& names);
};

// Applies `order` to raw logits and softmaxes.
EntailmentJudgment judgment_from_logits(const std::array<double, 3>& raw, const LabelOrder& order);

enum class BackendKind { Mock, Local, Remote };

std::string to_string(BackendKind kind);

struct BackendDescriptor {
    BackendKind kind = BackendKind::Mock;
    std::string identity;       // model name or endpoint; required for Local/Remote
    bool multilingual = false;  // MT routing warns when false

    bool operator==(const BackendDescriptor&) const = default;
};

}  // namespace entailguard
