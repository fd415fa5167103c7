#include "entailguard/encoder.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace entailguard {

namespace k = kernels;

EncoderConfig EncoderConfig::from_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError("encoder config: cannot open " + file.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("encoder config: malformed JSON: " + std::string(e.what()));
    }
    EncoderConfig cfg;
    cfg.hidden_size = doc.at("hidden_size").get<std::size_t>();
    cfg.num_layers = doc.at("num_layers").get<std::size_t>();
    cfg.num_heads = doc.at("num_attention_heads").get<std::size_t>();
    cfg.intermediate_size = doc.at("intermediate_size").get<std::size_t>();
    cfg.vocab_size = doc.at("vocab_size").get<std::size_t>();
    cfg.max_positions = doc.at("max_position_embeddings").get<std::size_t>();
    cfg.type_vocab_size = doc.value("type_vocab_size", std::size_t{2});
    cfg.num_labels = doc.value("num_labels", std::size_t{3});
    cfg.layer_norm_eps = doc.value("layer_norm_eps", 1e-5f);
    if (doc.value("hidden_act", "gelu") != std::string("gelu"))
        throw ParseError("encoder config: unsupported hidden_act '" +
                         doc.value("hidden_act", "") + "'");
    cfg.validate();
    return cfg;
}

void EncoderConfig::validate() const {
    if (hidden_size == 0 || vocab_size == 0 || max_positions == 0 || num_heads == 0)
        throw ParseError("encoder config: zero-sized dimension");
    if (hidden_size % num_heads != 0)
        throw ParseError("encoder config: hidden_size not divisible by num_attention_heads");
    if (num_labels == 0) throw ParseError("encoder config: num_labels must be positive");
}

namespace {

Mat take_matrix(const TensorMap& weights, const std::string& name, std::size_t rows,
                std::size_t cols) {
    auto it = weights.find(name);
    if (it == weights.end()) throw ParseError("encoder weights: missing tensor '" + name + "'");
    const auto& t = it->second;
    if (t.shape.size() != 2 || static_cast<std::size_t>(t.shape[0]) != rows ||
        static_cast<std::size_t>(t.shape[1]) != cols)
        throw ParseError("encoder weights: tensor '" + name + "' has wrong shape");
    Mat m(rows, cols);
    m.data = t.data;
    return m;
}

std::vector<float> take_vector(const TensorMap& weights, const std::string& name,
                               std::size_t size) {
    auto it = weights.find(name);
    if (it == weights.end()) throw ParseError("encoder weights: missing tensor '" + name + "'");
    const auto& t = it->second;
    if (t.shape.size() != 1 || static_cast<std::size_t>(t.shape[0]) != size)
        throw ParseError("encoder weights: tensor '" + name + "' has wrong shape");
    return t.data;
}

}  // namespace

CrossEncoder::CrossEncoder(EncoderConfig config, const TensorMap& weights)
    : config_(config) {
    config_.validate();
    const std::size_t H = config_.hidden_size;

    word_embeddings_ = take_matrix(weights, "embeddings.word", config_.vocab_size, H);
    position_embeddings_ = take_matrix(weights, "embeddings.position", config_.max_positions, H);
    type_embeddings_ = take_matrix(weights, "embeddings.token_type", config_.type_vocab_size, H);
    embedding_norm_ = {take_vector(weights, "embeddings.norm.weight", H),
                       take_vector(weights, "embeddings.norm.bias", H)};

    auto take_linear = [&](const std::string& name, std::size_t out, std::size_t in) {
        return LinearWeights{take_matrix(weights, name + ".weight", out, in),
                             take_vector(weights, name + ".bias", out)};
    };
    auto take_norm = [&](const std::string& name) {
        return NormWeights{take_vector(weights, name + ".weight", H),
                           take_vector(weights, name + ".bias", H)};
    };

    layers_.reserve(config_.num_layers);
    for (std::size_t i = 0; i < config_.num_layers; ++i) {
        const std::string p = "layers." + std::to_string(i) + ".";
        Layer layer;
        layer.query = take_linear(p + "attention.query", H, H);
        layer.key = take_linear(p + "attention.key", H, H);
        layer.value = take_linear(p + "attention.value", H, H);
        layer.attn_output = take_linear(p + "attention.output", H, H);
        layer.attn_norm = take_norm(p + "attention.norm");
        layer.ffn_intermediate = take_linear(p + "ffn.intermediate", config_.intermediate_size, H);
        layer.ffn_output = take_linear(p + "ffn.output", H, config_.intermediate_size);
        layer.ffn_norm = take_norm(p + "ffn.norm");
        layers_.push_back(std::move(layer));
    }

    pooler_ = take_linear("pooler", H, H);
    classifier_ = take_linear("classifier", config_.num_labels, H);
}

void CrossEncoder::encode_sequence(const std::vector<int>& ids, const std::vector<int>& segments,
                                   float* logits_out) const {
    const std::size_t T = ids.size();
    const std::size_t H = config_.hidden_size;
    const std::size_t heads = config_.num_heads;
    const std::size_t dh = H / heads;

    if (T == 0 || T > config_.max_positions)
        throw std::invalid_argument("encoder: sequence length outside [1, max_positions]");
    if (segments.size() != T)
        throw std::invalid_argument("encoder: ids and segments length mismatch");

    Mat h(T, H);
    for (std::size_t t = 0; t < T; ++t) {
        const int id = ids[t];
        const int seg = segments[t];
        if (id < 0 || static_cast<std::size_t>(id) >= config_.vocab_size)
            throw std::invalid_argument("encoder: token id out of vocabulary range");
        if (seg < 0 || static_cast<std::size_t>(seg) >= config_.type_vocab_size)
            throw std::invalid_argument("encoder: segment id out of range");
        const float* word = word_embeddings_.row(static_cast<std::size_t>(id));
        const float* pos = position_embeddings_.row(t);
        const float* type = type_embeddings_.row(static_cast<std::size_t>(seg));
        float* out = h.row(t);
        for (std::size_t c = 0; c < H; ++c) out[c] = word[c] + pos[c] + type[c];
    }
    k::layer_norm_rows(h, embedding_norm_.gamma, embedding_norm_.beta, config_.layer_norm_eps);

    const std::vector<std::size_t> all_valid(T, T);
    const float scale = 1.0f / std::sqrt(static_cast<float>(dh));

    Mat q, kproj, v, scores, ctx_head, ctx(T, H), attn_out, inter, ffn_out;
    Mat qh(T, dh), kh(T, dh), vh(T, dh);

    for (const Layer& layer : layers_) {
        k::linear(h, layer.query.w, layer.query.b, q);
        k::linear(h, layer.key.w, layer.key.b, kproj);
        k::linear(h, layer.value.w, layer.value.b, v);

        for (std::size_t hd = 0; hd < heads; ++hd) {
            const std::size_t off = hd * dh;
            for (std::size_t t = 0; t < T; ++t) {
                for (std::size_t c = 0; c < dh; ++c) {
                    qh.at(t, c) = q.at(t, off + c);
                    kh.at(t, c) = kproj.at(t, off + c);
                    vh.at(t, c) = v.at(t, off + c);
                }
            }
            k::matmul_nt(qh, kh, scale, scores);
            k::softmax_rows(scores, all_valid);
            k::matmul_nn(scores, vh, ctx_head);
            for (std::size_t t = 0; t < T; ++t)
                for (std::size_t c = 0; c < dh; ++c) ctx.at(t, off + c) = ctx_head.at(t, c);
        }

        k::linear(ctx, layer.attn_output.w, layer.attn_output.b, attn_out);
        k::add_inplace(h, attn_out);
        k::layer_norm_rows(h, layer.attn_norm.gamma, layer.attn_norm.beta, config_.layer_norm_eps);

        k::linear(h, layer.ffn_intermediate.w, layer.ffn_intermediate.b, inter);
        k::gelu_inplace(inter);
        k::linear(inter, layer.ffn_output.w, layer.ffn_output.b, ffn_out);
        k::add_inplace(h, ffn_out);
        k::layer_norm_rows(h, layer.ffn_norm.gamma, layer.ffn_norm.beta, config_.layer_norm_eps);
    }

    // [CLS] pooling: dense + tanh, then the classification head
    Mat cls(1, H);
    for (std::size_t c = 0; c < H; ++c) cls.at(0, c) = h.at(0, c);
    Mat pooled;
    k::linear(cls, pooler_.w, pooler_.b, pooled);
    k::tanh_inplace(pooled);
    Mat logits;
    k::linear(pooled, classifier_.w, classifier_.b, logits);
    for (std::size_t c = 0; c < config_.num_labels; ++c) logits_out[c] = logits.at(0, c);
}

Mat CrossEncoder::forward(const std::vector<std::vector<int>>& ids,
                          const std::vector<std::vector<int>>& segments) const {
    if (ids.size() != segments.size())
        throw std::invalid_argument("encoder: batch ids/segments size mismatch");
    Mat logits(ids.size(), config_.num_labels);
    for (std::size_t b = 0; b < ids.size(); ++b)
        encode_sequence(ids[b], segments[b], logits.row(b));
    return logits;
}

}  // namespace entailguard
