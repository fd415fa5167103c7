#include "entailguard/demo_model.hpp"

#include <fstream>
#include <random>
#include <vector>

#include "entailguard/safetensors.hpp"
#include "nlohmann/json.hpp"

namespace entailguard {

namespace {

const std::vector<std::string>& demo_vocab() {
    static const std::vector<std::string> vocab = {
        "[PAD]", "[UNK]", "[CLS]", "[SEP]",
        "a", "an", "the", "is", "are", "was", "not", "no", "of", "in", "on", "to", "and",
        "cat", "dog", "animal", "water", "pool", "bank", "cash", "bottle", "machine",
        "definition", "translation", "paraphrase", "text", "sentence", "word", "meaning",
        "slender", "container", "liquid", "institution", "financial", "swim", "swimming",
        "sits", "sleeps", "runs", "holds", "generates", "model", "output", "source",
        "##s", "##ing", "##ed", "##er", "##ly", ".", ",", "?", "!",
    };
    return vocab;
}

}  // namespace

void write_demo_model(const std::filesystem::path& dir, const DemoModelSpec& spec) {
    std::filesystem::create_directories(dir);

    const std::size_t H = spec.hidden;
    const std::size_t vocab_size = demo_vocab().size();

    std::mt19937 rng(spec.seed);
    std::normal_distribution<float> dist(0.0f, 0.2f);
    auto tensor = [&](std::vector<std::int64_t> shape) {
        SafeTensor t;
        t.shape = std::move(shape);
        std::size_t count = 1;
        for (auto d : t.shape) count *= static_cast<std::size_t>(d);
        t.data.resize(count);
        for (auto& v : t.data) v = dist(rng);
        return t;
    };
    auto ones = [&](std::int64_t n) {
        SafeTensor t;
        t.shape = {n};
        t.data.assign(static_cast<std::size_t>(n), 1.0f);
        return t;
    };
    auto zeros = [&](std::int64_t n) {
        SafeTensor t;
        t.shape = {n};
        t.data.assign(static_cast<std::size_t>(n), 0.0f);
        return t;
    };

    TensorMap weights;
    weights["embeddings.word"] = tensor({static_cast<std::int64_t>(vocab_size),
                                         static_cast<std::int64_t>(H)});
    weights["embeddings.position"] = tensor({static_cast<std::int64_t>(spec.max_positions),
                                             static_cast<std::int64_t>(H)});
    weights["embeddings.token_type"] = tensor({2, static_cast<std::int64_t>(H)});
    weights["embeddings.norm.weight"] = ones(static_cast<std::int64_t>(H));
    weights["embeddings.norm.bias"] = zeros(static_cast<std::int64_t>(H));

    for (std::size_t i = 0; i < spec.layers; ++i) {
        const std::string p = "layers." + std::to_string(i) + ".";
        for (const char* name : {"attention.query", "attention.key", "attention.value",
                                 "attention.output"}) {
            weights[p + name + ".weight"] = tensor({static_cast<std::int64_t>(H),
                                                    static_cast<std::int64_t>(H)});
            weights[p + name + ".bias"] = zeros(static_cast<std::int64_t>(H));
        }
        weights[p + "attention.norm.weight"] = ones(static_cast<std::int64_t>(H));
        weights[p + "attention.norm.bias"] = zeros(static_cast<std::int64_t>(H));
        weights[p + "ffn.intermediate.weight"] =
            tensor({static_cast<std::int64_t>(spec.intermediate), static_cast<std::int64_t>(H)});
        weights[p + "ffn.intermediate.bias"] = zeros(static_cast<std::int64_t>(spec.intermediate));
        weights[p + "ffn.output.weight"] =
            tensor({static_cast<std::int64_t>(H), static_cast<std::int64_t>(spec.intermediate)});
        weights[p + "ffn.output.bias"] = zeros(static_cast<std::int64_t>(H));
        weights[p + "ffn.norm.weight"] = ones(static_cast<std::int64_t>(H));
        weights[p + "ffn.norm.bias"] = zeros(static_cast<std::int64_t>(H));
    }

    weights["pooler.weight"] = tensor({static_cast<std::int64_t>(H), static_cast<std::int64_t>(H)});
    weights["pooler.bias"] = zeros(static_cast<std::int64_t>(H));
    weights["classifier.weight"] = tensor({3, static_cast<std::int64_t>(H)});
    weights["classifier.bias"] = zeros(3);

    save_safetensors(dir / "model.safetensors", weights);

    nlohmann::ordered_json config = {
        {"name", spec.name},
        {"hidden_size", H},
        {"num_layers", spec.layers},
        {"num_attention_heads", spec.heads},
        {"intermediate_size", spec.intermediate},
        {"vocab_size", vocab_size},
        {"max_position_embeddings", spec.max_positions},
        {"type_vocab_size", 2},
        {"num_labels", 3},
        {"layer_norm_eps", 1e-5},
        {"hidden_act", "gelu"},
        {"multilingual", spec.multilingual},
    };
    std::ofstream(dir / "config.json") << config.dump(2) << "\n";

    nlohmann::ordered_json tokenizer = {
        {"type", "wordpiece"},  {"lowercase", true},
        {"unk_token", "[UNK]"}, {"cls_token", "[CLS]"},
        {"sep_token", "[SEP]"}, {"pad_token", "[PAD]"},
        {"continuation_prefix", "##"}, {"max_word_chars", 100},
        {"vocab", demo_vocab()},
    };
    std::ofstream(dir / "tokenizer.json") << tokenizer.dump(2) << "\n";

    nlohmann::ordered_json labels = {
        {"order", {spec.label_order[0], spec.label_order[1], spec.label_order[2]}}};
    std::ofstream(dir / "labels.json") << labels.dump(2) << "\n";
}

}  // namespace entailguard
