#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "entailguard/detector.hpp"

namespace entailguard {

// Prediction file: a JSON array with keys emitted in fixed order
// (id, label, p_hallucination, mode, judgments); each judgment carries its
// direction tag and probability triple. Deterministic: serializing the same
// verdicts twice is byte-identical, and serialize(parse(text)) == text for
// any canonically produced file.
std::string serialize_predictions(const std::vector<Verdict>& verdicts);

std::vector<Verdict> parse_predictions(std::string_view raw);

}  // namespace entailguard
