#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "entailguard/kernels.hpp"
#include "entailguard/safetensors.hpp"

namespace entailguard {

struct EncoderConfig {
    std::size_t hidden_size = 0;
    std::size_t num_layers = 0;
    std::size_t num_heads = 0;
    std::size_t intermediate_size = 0;
    std::size_t vocab_size = 0;
    std::size_t max_positions = 0;
    std::size_t type_vocab_size = 2;
    std::size_t num_labels = 3;
    float layer_norm_eps = 1e-5f;

    static EncoderConfig from_json_file(const std::filesystem::path& file);
    void validate() const;  // throws ParseError
};

// BERT-style post-LN transformer encoding a token-id sequence pair jointly
// and emitting classification logits from the [CLS] position through a
// tanh pooler. Weights follow the torch [out, in] linear convention.
class CrossEncoder {
  public:
    CrossEncoder(EncoderConfig config, const TensorMap& weights);

    // One logit row per input sequence. Sequences are processed as a ragged
    // batch (no padding), so batch results are bit-identical to singles.
    Mat forward(const std::vector<std::vector<int>>& ids,
                const std::vector<std::vector<int>>& segments) const;

    const EncoderConfig& config() const { return config_; }

  private:
    struct LinearWeights {
        Mat w;  // [out, in]
        std::vector<float> b;
    };
    struct NormWeights {
        std::vector<float> gamma, beta;
    };
    struct Layer {
        LinearWeights query, key, value, attn_output;
        NormWeights attn_norm;
        LinearWeights ffn_intermediate, ffn_output;
        NormWeights ffn_norm;
    };

    void encode_sequence(const std::vector<int>& ids, const std::vector<int>& segments,
                         float* logits_out) const;

    EncoderConfig config_;
    Mat word_embeddings_;      // [vocab, H]
    Mat position_embeddings_;  // [max_positions, H]
    Mat type_embeddings_;      // [type_vocab, H]
    NormWeights embedding_norm_;
    std::vector<Layer> layers_;
    LinearWeights pooler_;
    LinearWeights classifier_;
};

}  // namespace entailguard
