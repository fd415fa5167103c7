#pragma once

#include <filesystem>
#include <memory>

#include "entailguard/backend.hpp"
#include "entailguard/encoder.hpp"
#include "entailguard/tokenizer.hpp"

namespace entailguard {

// Local encoder runtime. A model directory holds:
//   model.safetensors  — encoder weights (F32)
//   config.json        — architecture hyperparameters, optional "name" and
//                        "multilingual" descriptor fields
//   tokenizer.json     — wordpiece tokenizer definition
//   labels.json        — {"order":["entailment","neutral","contradiction"]}
//                        in the classifier head's logit order (any permutation)
// Judgments are deterministic for identical model files and inputs, and the
// runtime is stateless per call, so concurrent callers are safe.
class LocalBackend : public NliBackend {
  public:
    struct Options {
        TruncationPolicy truncation = TruncationPolicy::TruncatePremise;
    };

    // Throws ParseError on missing or corrupt files, a manifest that does
    // not name all three labels, or a classifier head that does not emit
    // exactly three logits.
    static std::unique_ptr<LocalBackend> load(const std::filesystem::path& model_dir,
                                              Options options);
    static std::unique_ptr<LocalBackend> load(const std::filesystem::path& model_dir) {
        return load(model_dir, Options{});
    }

    BackendDescriptor descriptor() const override;
    EntailmentJudgment judge(const std::string& premise, const std::string& hypothesis) override;
    std::vector<EntailmentJudgment> judge_batch(const std::vector<TextPair>& pairs) override;

  private:
    LocalBackend(WordpieceTokenizer tokenizer, CrossEncoder encoder, LabelOrder order,
                 Options options, std::string identity, bool multilingual);

    PairEncoding encode_checked(const std::string& premise, const std::string& hypothesis) const;

    WordpieceTokenizer tokenizer_;
    CrossEncoder encoder_;
    LabelOrder label_order_;
    Options options_;
    std::string identity_;
    bool multilingual_;
};

}  // namespace entailguard
