#include "entailguard/tokenizer.hpp"

#include <cctype>
#include <fstream>

#include "nlohmann/json.hpp"

namespace entailguard {

namespace {

bool ascii_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool ascii_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::vector<std::string> pre_tokenize(std::string_view text, bool lowercase) {
    std::vector<std::string> words;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            words.push_back(current);
            current.clear();
        }
    };
    for (char c : text) {
        if (ascii_space(c)) {
            flush();
        } else if (ascii_punct(c)) {
            flush();
            words.emplace_back(1, c);
        } else {
            if (lowercase && c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            current.push_back(c);
        }
    }
    flush();
    return words;
}

}  // namespace

WordpieceTokenizer WordpieceTokenizer::from_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("tokenizer: malformed JSON: ") + e.what());
    }
    if (doc.value("type", "") != "wordpiece")
        throw ParseError("tokenizer: unsupported type '" + doc.value("type", "") + "'");
    if (!doc.contains("vocab") || !doc["vocab"].is_array())
        throw ParseError("tokenizer: missing 'vocab' array");

    WordpieceTokenizer tok;
    tok.lowercase_ = doc.value("lowercase", true);
    tok.continuation_prefix_ = doc.value("continuation_prefix", "##");
    tok.max_word_chars_ = doc.value("max_word_chars", std::size_t{100});

    int id = 0;
    for (const auto& entry : doc["vocab"]) {
        if (!entry.is_string()) throw ParseError("tokenizer: vocab entries must be strings");
        auto [it, inserted] = tok.vocab_.emplace(entry.get<std::string>(), id++);
        if (!inserted) throw ParseError("tokenizer: duplicate vocab entry '" + it->first + "'");
    }

    auto special = [&](const char* key, const char* fallback) -> int {
        const std::string name = doc.value(key, fallback);
        auto it = tok.vocab_.find(name);
        if (it == tok.vocab_.end())
            throw ParseError("tokenizer: special token '" + name + "' not in vocab");
        return it->second;
    };
    tok.unk_id_ = special("unk_token", "[UNK]");
    tok.cls_id_ = special("cls_token", "[CLS]");
    tok.sep_id_ = special("sep_token", "[SEP]");
    tok.pad_id_ = special("pad_token", "[PAD]");
    return tok;
}

WordpieceTokenizer WordpieceTokenizer::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("tokenizer: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json(text);
}

std::vector<int> WordpieceTokenizer::wordpiece(const std::string& word) const {
    if (word.size() > max_word_chars_) return {unk_id_};

    std::vector<int> pieces;
    std::size_t start = 0;
    while (start < word.size()) {
        // greedy longest-match-first
        std::size_t end = word.size();
        int piece_id = -1;
        while (end > start) {
            std::string candidate = word.substr(start, end - start);
            if (start > 0) candidate = continuation_prefix_ + candidate;
            if (auto it = vocab_.find(candidate); it != vocab_.end()) {
                piece_id = it->second;
                break;
            }
            --end;
        }
        if (piece_id < 0) return {unk_id_};  // unsegmentable word
        pieces.push_back(piece_id);
        start = end;
    }
    return pieces;
}

std::vector<int> WordpieceTokenizer::tokenize(std::string_view text) const {
    std::vector<int> ids;
    for (const auto& word : pre_tokenize(text, lowercase_)) {
        const auto pieces = wordpiece(word);
        ids.insert(ids.end(), pieces.begin(), pieces.end());
    }
    return ids;
}

PairEncoding WordpieceTokenizer::encode_pair(std::string_view premise, std::string_view hypothesis,
                                             std::size_t max_positions,
                                             TruncationPolicy policy) const {
    std::vector<int> prem = tokenize(premise);
    const std::vector<int> hyp = tokenize(hypothesis);
    if (max_positions < 4)
        throw BackendError("tokenizer: positional limit " + std::to_string(max_positions) +
                           " cannot hold a sequence pair");

    const std::size_t budget = max_positions - 3;  // [CLS] and two [SEP]
    PairEncoding enc;

    if (prem.size() + hyp.size() > budget) {
        if (policy == TruncationPolicy::Error)
            throw BackendError("input too long: " + std::to_string(prem.size() + hyp.size()) +
                               " tokens exceed the positional budget of " + std::to_string(budget));
        // The hypothesis carries the claim under test; it is never cut.
        if (hyp.size() + 1 > budget)
            throw BackendError("input too long: hypothesis alone (" + std::to_string(hyp.size()) +
                               " tokens) leaves no room for the premise within the budget of " +
                               std::to_string(budget));
        prem.resize(budget - hyp.size());
        enc.truncated = true;
    }

    enc.premise_tokens = prem.size();
    enc.ids.reserve(prem.size() + hyp.size() + 3);
    enc.ids.push_back(cls_id_);
    enc.ids.insert(enc.ids.end(), prem.begin(), prem.end());
    enc.ids.push_back(sep_id_);
    const std::size_t first_segment = enc.ids.size();
    enc.ids.insert(enc.ids.end(), hyp.begin(), hyp.end());
    enc.ids.push_back(sep_id_);

    enc.segments.assign(enc.ids.size(), 0);
    for (std::size_t i = first_segment; i < enc.ids.size(); ++i) enc.segments[i] = 1;
    return enc;
}

}  // namespace entailguard
