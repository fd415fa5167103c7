#include "entailguard/remote_backend.hpp"

#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "nlohmann/json.hpp"

using namespace entailguard;

namespace {

// In-process protocol server; the handler maps each request pair to a triple.
class TestServer {
  public:
    using Handler = std::function<nlohmann::json(const nlohmann::json& request)>;

    explicit TestServer(Handler handler) : handler_(std::move(handler)) {
        server_.Post("/v1/entail", [this](const httplib::Request& req, httplib::Response& res) {
            const auto request = nlohmann::json::parse(req.body);
            const auto reply = handler_(request);
            if (reply.contains("__status__")) {
                res.status = reply["__status__"].get<int>();
                res.set_content("backend exploded", "text/plain");
                return;
            }
            res.set_content(reply.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

    ~TestServer() {
        server_.stop();
        thread_.join();
    }

    std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }

  private:
    Handler handler_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

nlohmann::json echo_triple(const nlohmann::json& request, double e, double n, double c) {
    nlohmann::json reply;
    reply["judgments"] = nlohmann::json::array();
    for (std::size_t i = 0; i < request["pairs"].size(); ++i)
        reply["judgments"].push_back({{"entailment", e}, {"neutral", n}, {"contradiction", c}});
    return reply;
}

}  // namespace

TEST_SUITE("remote") {

TEST_CASE("protocol round trip, order preserving") {
    std::vector<nlohmann::json> seen;
    TestServer server([&](const nlohmann::json& req) {
        seen.push_back(req);
        return echo_triple(req, 0.7, 0.2, 0.1);
    });

    RemoteBackend backend(server.endpoint());
    const auto out = backend.judge_batch({{"p1", "h1"}, {"p2", "h2"}});
    REQUIRE(out.size() == 2);
    CHECK(out[0] == EntailmentJudgment{0.7, 0.2, 0.1});
    CHECK(out[1] == EntailmentJudgment{0.7, 0.2, 0.1});

    REQUIRE(seen.size() == 1);
    CHECK(seen[0]["pairs"][0]["premise"] == "p1");
    CHECK(seen[0]["pairs"][1]["hypothesis"] == "h2");

    SUBCASE("single judge goes through the same protocol") {
        CHECK(backend.judge("a", "b") == EntailmentJudgment{0.7, 0.2, 0.1});
    }
    SUBCASE("free-function helper") {
        CHECK(remote_judge(server.endpoint(), {{"x", "y"}}).size() == 1);
    }
}

TEST_CASE("response length mismatch is a protocol error") {
    TestServer server([](const nlohmann::json&) {
        nlohmann::json reply;
        reply["judgments"] = nlohmann::json::array();
        reply["judgments"].push_back(
            {{"entailment", 0.7}, {"neutral", 0.2}, {"contradiction", 0.1}});
        return reply;  // always one judgment
    });
    RemoteBackend backend(server.endpoint());
    CHECK_THROWS_WITH_AS(backend.judge_batch({{"p1", "h1"}, {"p2", "h2"}}),
                         doctest::Contains("length mismatch"), BackendError);
}

TEST_CASE("invariant-violating triple is rejected, not renormalized") {
    TestServer server([](const nlohmann::json& req) { return echo_triple(req, 0.7, 0.2, 0.2); });
    RemoteBackend backend(server.endpoint());
    CHECK_THROWS_WITH_AS(backend.judge("p", "h"), doctest::Contains("invalid judgment"),
                         BackendError);
}

TEST_CASE("non-2xx status is a backend error") {
    TestServer server([](const nlohmann::json&) {
        nlohmann::json reply;
        reply["__status__"] = 503;
        return reply;
    });
    RemoteBackend backend(server.endpoint());
    CHECK_THROWS_WITH_AS(backend.judge("p", "h"), doctest::Contains("status 503"), BackendError);
}

TEST_CASE("malformed response body") {
    TestServer server([](const nlohmann::json&) {
        return nlohmann::json{{"unexpected", "shape"}};
    });
    RemoteBackend backend(server.endpoint());
    CHECK_THROWS_WITH_AS(backend.judge("p", "h"), doctest::Contains("judgments"), BackendError);
}

TEST_CASE("unreachable endpoint is a transport failure") {
    RemoteBackend::Options options;
    options.connect_timeout_sec = 1;
    options.read_timeout_sec = 1;
    RemoteBackend backend("http://127.0.0.1:1", options);  // nothing listens on port 1
    CHECK_THROWS_AS(backend.judge("p", "h"), BackendError);
}

TEST_CASE("endpoint with a base path prefixes the route") {
    httplib::Server raw;
    std::string hit_path;
    raw.Post("/nli/v1/entail", [&](const httplib::Request& req, httplib::Response& res) {
        hit_path = req.path;
        const auto request = nlohmann::json::parse(req.body);
        res.set_content(echo_triple(request, 1.0, 0.0, 0.0).dump(), "application/json");
    });
    const int port = raw.bind_to_any_port("127.0.0.1");
    std::thread t([&] { raw.listen_after_bind(); });
    raw.wait_until_ready();

    RemoteBackend backend("http://127.0.0.1:" + std::to_string(port) + "/nli");
    CHECK(backend.judge("p", "h").p_entailment == 1.0);
    CHECK(hit_path == "/nli/v1/entail");

    raw.stop();
    t.join();
}

TEST_CASE("empty batch never touches the network") {
    RemoteBackend backend("http://127.0.0.1:1");
    CHECK(backend.judge_batch({}).empty());
}

}  // TEST_SUITE
