#pragma once

#include <string>

#include "entailguard/backend.hpp"

namespace entailguard {

// HTTP client for the remote judging protocol:
//   POST <endpoint>/v1/entail
//   request  {"pairs":[{"premise":"...","hypothesis":"..."}]}
//   response {"judgments":[{"entailment":x,"neutral":y,"contradiction":z}]}
// One response element per request element, order preserving. A response of
// the wrong length or with a triple violating the judgment invariants is a
// protocol error; triples are never silently renormalized.
class RemoteBackend : public NliBackend {
  public:
    struct Options {
        bool multilingual = false;      // declared capability of the served model
        int connect_timeout_sec = 5;
        int read_timeout_sec = 120;
    };

    // endpoint: http://host[:port][/base-path]
    explicit RemoteBackend(std::string endpoint) : RemoteBackend(std::move(endpoint), Options{}) {}
    RemoteBackend(std::string endpoint, Options options);

    BackendDescriptor descriptor() const override;
    EntailmentJudgment judge(const std::string& premise, const std::string& hypothesis) override;
    std::vector<EntailmentJudgment> judge_batch(const std::vector<TextPair>& pairs) override;

  private:
    std::string base_;  // scheme://host:port
    std::string path_prefix_;
    Options options_;
};

// Single-shot protocol helper.
std::vector<EntailmentJudgment> remote_judge(const std::string& endpoint,
                                             const std::vector<TextPair>& pairs);

}  // namespace entailguard
