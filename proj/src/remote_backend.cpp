#include "entailguard/remote_backend.hpp"

#include "httplib.h"
#include "nlohmann/json.hpp"

namespace entailguard {

RemoteBackend::RemoteBackend(std::string endpoint, Options options)
    : options_(options) {
    if (endpoint.empty()) throw ConfigError("remote backend: empty endpoint");
    const std::size_t scheme_end = endpoint.find("://");
    const std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const std::size_t path_start = endpoint.find('/', host_start);
    if (path_start == std::string::npos) {
        base_ = endpoint;
    } else {
        base_ = endpoint.substr(0, path_start);
        path_prefix_ = endpoint.substr(path_start);
        while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
    }
}

BackendDescriptor RemoteBackend::descriptor() const {
    return {BackendKind::Remote, base_ + path_prefix_, options_.multilingual};
}

EntailmentJudgment RemoteBackend::judge(const std::string& premise,
                                        const std::string& hypothesis) {
    return judge_batch({{premise, hypothesis}}).front();
}

std::vector<EntailmentJudgment> RemoteBackend::judge_batch(const std::vector<TextPair>& pairs) {
    if (pairs.empty()) return {};
    for (const auto& p : pairs) check_pair_nonempty(p.premise, p.hypothesis);

    nlohmann::json request;
    request["pairs"] = nlohmann::json::array();
    for (const auto& p : pairs)
        request["pairs"].push_back({{"premise", p.premise}, {"hypothesis", p.hypothesis}});

    httplib::Client client(base_);
    client.set_connection_timeout(options_.connect_timeout_sec, 0);
    client.set_read_timeout(options_.read_timeout_sec, 0);

    const std::string url = path_prefix_ + "/v1/entail";
    auto res = client.Post(url, request.dump(), "application/json");
    if (!res)
        throw BackendError("remote backend: transport failure contacting " + base_ + url + ": " +
                           httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        throw BackendError("remote backend: " + base_ + url + " returned status " +
                           std::to_string(res->status));

    nlohmann::json response;
    try {
        response = nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::parse_error& e) {
        throw BackendError("remote backend: malformed response JSON: " + std::string(e.what()));
    }
    if (!response.contains("judgments") || !response["judgments"].is_array())
        throw BackendError("remote backend: response lacks a 'judgments' array");
    const auto& judgments = response["judgments"];
    if (judgments.size() != pairs.size())
        throw BackendError("remote backend: response length mismatch (got " +
                           std::to_string(judgments.size()) + ", expected " +
                           std::to_string(pairs.size()) + ")");

    std::vector<EntailmentJudgment> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < judgments.size(); ++i) {
        const auto& j = judgments[i];
        for (const char* key : {"entailment", "neutral", "contradiction"})
            if (!j.contains(key) || !j[key].is_number())
                throw BackendError("remote backend: judgment " + std::to_string(i) +
                                   " missing numeric '" + key + "'");
        EntailmentJudgment judgment{j["entailment"].get<double>(), j["neutral"].get<double>(),
                                    j["contradiction"].get<double>()};
        validate_judgment(judgment, "remote backend: judgment " + std::to_string(i));
        out.push_back(judgment);
    }
    return out;
}

std::vector<EntailmentJudgment> remote_judge(const std::string& endpoint,
                                             const std::vector<TextPair>& pairs) {
    RemoteBackend backend(endpoint);
    return backend.judge_batch(pairs);
}

}  // namespace entailguard
