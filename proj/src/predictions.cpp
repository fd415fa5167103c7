#include "entailguard/predictions.hpp"

#include <stdexcept>

#include "nlohmann/json.hpp"

namespace entailguard {

std::string serialize_predictions(const std::vector<Verdict>& verdicts) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
        if (!v.ok())
            throw std::invalid_argument("serialize_predictions: verdict " + v.sample_id +
                                        " is a failure record");
        nlohmann::ordered_json rec;
        rec["id"] = v.sample_id;
        rec["label"] = to_string(v.label);
        rec["p_hallucination"] = v.score;
        rec["mode"] = to_string(v.mode);
        rec["judgments"] = nlohmann::ordered_json::array();
        for (const auto& j : v.judgments) {
            nlohmann::ordered_json entry;
            entry["direction"] = to_string(j.direction);
            entry["entailment"] = j.judgment.p_entailment;
            entry["neutral"] = j.judgment.p_neutral;
            entry["contradiction"] = j.judgment.p_contradiction;
            rec["judgments"].push_back(std::move(entry));
        }
        out.push_back(std::move(rec));
    }
    return out.dump(2) + "\n";
}

namespace {

Rule derive_rule(const std::vector<TaggedJudgment>& judgments, std::size_t index) {
    if (judgments.size() == 2) return Rule::BidirectionalMin;
    if (judgments.size() != 1)
        throw ParseError("prediction " + std::to_string(index) +
                         ": expected one or two judgments, got " +
                         std::to_string(judgments.size()));
    switch (judgments[0].direction) {
        case DirectionTag::HypToTgt: return Rule::DmHypEntailsTgt;
        case DirectionTag::SrcToHyp: return Rule::UnidirectionalSrcToHyp;
        case DirectionTag::HypToSrc: return Rule::UnidirectionalHypToSrc;
    }
    return Rule::DmHypEntailsTgt;
}

}  // namespace

std::vector<Verdict> parse_predictions(std::string_view raw) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("predictions: malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw ParseError("predictions: not a top-level JSON array");

    std::vector<Verdict> verdicts;
    verdicts.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& rec = doc[i];
        if (!rec.is_object()) throw ParseError("prediction " + std::to_string(i) + ": not an object");
        Verdict v;
        try {
            v.sample_id = rec.at("id").get<std::string>();
            v.label = parse_label(rec.at("label").get<std::string>());
            v.score = rec.at("p_hallucination").get<double>();
            v.mode = parse_mode(rec.at("mode").get<std::string>());
            for (const auto& j : rec.at("judgments")) {
                TaggedJudgment tagged;
                tagged.direction = parse_direction_tag(j.at("direction").get<std::string>());
                tagged.judgment = {j.at("entailment").get<double>(), j.at("neutral").get<double>(),
                                   j.at("contradiction").get<double>()};
                if (!tagged.judgment.valid())
                    throw ParseError("judgment violates probability invariants");
                v.judgments.push_back(std::move(tagged));
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("prediction " + std::to_string(i) + ": " + e.what());
        } catch (const ParseError& e) {
            throw ParseError("prediction " + std::to_string(i) + ": " + e.what());
        }
        if (v.score < 0.0 || v.score > 1.0)
            throw ParseError("prediction " + std::to_string(i) + ": p_hallucination outside [0,1]");
        v.rule = derive_rule(v.judgments, i);
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

}  // namespace entailguard
