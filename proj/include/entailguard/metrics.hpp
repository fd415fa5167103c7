#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entailguard/dataset.hpp"
#include "entailguard/detector.hpp"

namespace entailguard {

// Fraction of positions where the labels agree. Throws std::invalid_argument
// on empty input or length mismatch.
double accuracy(std::span<const Label> predicted, std::span<const Label> gold);

// 1-based fractional ranks; ties receive the average of their rank run.
std::vector<double> fractional_ranks(std::span<const double> values);

// Tie-aware Spearman rank correlation: average ranks per vector, then the
// Pearson correlation of the rank vectors. Throws std::invalid_argument on
// length mismatch, length < 2, or a constant input vector (degenerate —
// never silently 0).
double spearman(std::span<const double> xs, std::span<const double> ys);

struct MetricsBundle {
    std::size_t n = 0;
    double accuracy = 0.0;
    std::optional<double> spearman_rho;
    std::string spearman_unavailable_reason;  // set when spearman_rho is empty
    // Hallucination is the positive class.
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
};

struct EvalReport {
    MetricsBundle overall;
    std::map<TaskKind, MetricsBundle> per_task;  // all three keys, n = 0 when absent
    std::string config_echo;                     // filled by the caller
    std::vector<std::string> backend_identities;
};

// Matches verdicts to gold-annotated samples by id. Throws ParseError on an
// unmatched id, a duplicate gold id, or a matched sample without gold;
// std::invalid_argument on empty input or a failure verdict.
EvalReport evaluate(const std::vector<Verdict>& verdicts, const std::vector<Sample>& gold);

}  // namespace entailguard
