#include "entailguard/local_backend.hpp"

#include <fstream>

#include "nlohmann/json.hpp"

namespace entailguard {

namespace {

LabelOrder load_label_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("label manifest: cannot open " + file.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("label manifest: malformed JSON: " + std::string(e.what()));
    }
    if (!doc.contains("order") || !doc["order"].is_array() || doc["order"].size() != 3)
        throw ParseError("label manifest: 'order' must list exactly three labels");
    std::array<std::string, 3> names;
    for (std::size_t i = 0; i < 3; ++i) names[i] = doc["order"][i].get<std::string>();
    return LabelOrder::from_names(names);
}

}  // namespace

std::unique_ptr<LocalBackend> LocalBackend::load(const std::filesystem::path& model_dir,
                                                 Options options) {
    if (!std::filesystem::is_directory(model_dir))
        throw ParseError("local backend: " + model_dir.string() + " is not a directory");

    EncoderConfig config = EncoderConfig::from_json_file(model_dir / "config.json");
    if (config.num_labels != 3)
        throw ParseError("local backend: classifier emits " + std::to_string(config.num_labels) +
                         " logits, expected 3");

    WordpieceTokenizer tokenizer =
        WordpieceTokenizer::from_file((model_dir / "tokenizer.json").string());
    if (tokenizer.vocab_size() != config.vocab_size)
        throw ParseError("local backend: tokenizer vocabulary (" +
                         std::to_string(tokenizer.vocab_size()) +
                         ") does not match model vocab_size (" +
                         std::to_string(config.vocab_size) + ")");

    TensorMap weights = load_safetensors(model_dir / "model.safetensors");
    LabelOrder order = load_label_manifest(model_dir / "labels.json");

    // descriptor metadata rides in config.json
    std::string identity = model_dir.filename().string();
    bool multilingual = false;
    {
        std::ifstream in(model_dir / "config.json");
        nlohmann::json doc = nlohmann::json::parse(in);
        identity = doc.value("name", identity);
        multilingual = doc.value("multilingual", false);
    }
    if (identity.empty()) identity = model_dir.string();

    return std::unique_ptr<LocalBackend>(new LocalBackend(std::move(tokenizer),
                                                          CrossEncoder(config, weights), order,
                                                          options, std::move(identity),
                                                          multilingual));
}

LocalBackend::LocalBackend(WordpieceTokenizer tokenizer, CrossEncoder encoder, LabelOrder order,
                           Options options, std::string identity, bool multilingual)
    : tokenizer_(std::move(tokenizer)),
      encoder_(std::move(encoder)),
      label_order_(order),
      options_(options),
      identity_(std::move(identity)),
      multilingual_(multilingual) {}

BackendDescriptor LocalBackend::descriptor() const {
    return {BackendKind::Local, identity_, multilingual_};
}

PairEncoding LocalBackend::encode_checked(const std::string& premise,
                                          const std::string& hypothesis) const {
    check_pair_nonempty(premise, hypothesis);
    return tokenizer_.encode_pair(premise, hypothesis, encoder_.config().max_positions,
                                  options_.truncation);
}

EntailmentJudgment LocalBackend::judge(const std::string& premise, const std::string& hypothesis) {
    const PairEncoding enc = encode_checked(premise, hypothesis);
    const Mat logits = encoder_.forward({enc.ids}, {enc.segments});
    return judgment_from_logits({logits.at(0, 0), logits.at(0, 1), logits.at(0, 2)}, label_order_);
}

std::vector<EntailmentJudgment> LocalBackend::judge_batch(const std::vector<TextPair>& pairs) {
    std::vector<std::vector<int>> ids, segments;
    ids.reserve(pairs.size());
    segments.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        try {
            PairEncoding enc = encode_checked(pairs[i].premise, pairs[i].hypothesis);
            ids.push_back(std::move(enc.ids));
            segments.push_back(std::move(enc.segments));
        } catch (const BackendError& e) {
            throw BackendError("pair " + std::to_string(i) + ": " + e.what());
        }
    }
    const Mat logits = encoder_.forward(ids, segments);
    std::vector<EntailmentJudgment> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out.push_back(judgment_from_logits({logits.at(i, 0), logits.at(i, 1), logits.at(i, 2)},
                                           label_order_));
    return out;
}

}  // namespace entailguard
