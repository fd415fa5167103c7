#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "entailguard/errors.hpp"

namespace entailguard {

enum class TruncationPolicy {
    TruncatePremise,  // drop premise tokens from the right, keep the full hypothesis
    Error             // refuse over-length inputs outright
};

// Sequence-pair encoding: [CLS] premise [SEP] hypothesis [SEP] with segment
// ids 0 for the premise half and 1 for the hypothesis half.
struct PairEncoding {
    std::vector<int> ids;
    std::vector<int> segments;
    std::size_t premise_tokens = 0;  // premise tokens kept after truncation
    bool truncated = false;
};

// Wordpiece tokenizer driven entirely by a JSON definition file:
// {"type":"wordpiece","lowercase":bool,"vocab":["[PAD]","[UNK]","[CLS]",
//  "[SEP]",...],"unk_token":"[UNK]","cls_token":"[CLS]","sep_token":"[SEP]",
//  "pad_token":"[PAD]","continuation_prefix":"##","max_word_chars":100}
// Pre-tokenization splits on ASCII whitespace and isolates ASCII
// punctuation; lowercasing applies to ASCII letters only, so multi-byte
// UTF-8 sequences pass through untouched.
class WordpieceTokenizer {
  public:
    static WordpieceTokenizer from_json(std::string_view text);
    static WordpieceTokenizer from_file(const std::string& path);

    std::vector<int> tokenize(std::string_view text) const;  // no special tokens

    // Throws BackendError when the pair cannot fit max_positions: always
    // under TruncationPolicy::Error, and under TruncatePremise when the
    // hypothesis alone leaves no room for a single premise token.
    PairEncoding encode_pair(std::string_view premise, std::string_view hypothesis,
                             std::size_t max_positions, TruncationPolicy policy) const;

    int pad_id() const { return pad_id_; }
    std::size_t vocab_size() const { return vocab_.size(); }

  private:
    std::vector<int> wordpiece(const std::string& word) const;

    std::unordered_map<std::string, int> vocab_;
    std::string continuation_prefix_ = "##";
    std::size_t max_word_chars_ = 100;
    bool lowercase_ = true;
    int unk_id_ = -1;
    int cls_id_ = -1;
    int sep_id_ = -1;
    int pad_id_ = -1;
};

}  // namespace entailguard
