#include "entailguard/backend.hpp"

#include <random>

#include "doctest.h"
#include "entailguard/mock_backend.hpp"
#include "support/oracles.hpp"

using namespace entailguard;

TEST_SUITE("backend") {

TEST_CASE("judgment validity") {
    CHECK(EntailmentJudgment{0.9, 0.08, 0.02}.valid());
    CHECK(EntailmentJudgment{1.0, 0.0, 0.0}.valid());
    CHECK(!EntailmentJudgment{0.7, 0.2, 0.2}.valid());   // sums to 1.1
    CHECK(!EntailmentJudgment{-0.1, 0.6, 0.5}.valid());  // negative component
    CHECK(!EntailmentJudgment{1.2, -0.1, -0.1}.valid());
    CHECK_THROWS_AS(validate_judgment({0.7, 0.2, 0.2}, "test"), BackendError);
}

TEST_CASE("softmax worked example") {
    const auto j = softmax3(2.0, 0.0, -2.0);
    // frozen from a high-precision oracle
    CHECK(j.p_entailment == doctest::Approx(0.866813332197).epsilon(1e-9));
    CHECK(j.p_neutral == doctest::Approx(0.117310427826).epsilon(1e-9));
    CHECK(j.p_contradiction == doctest::Approx(0.0158762399765).epsilon(1e-9));
    // and matches the coarser published rounding
    CHECK(std::abs(j.p_entailment - 0.8668) < 5e-5);
    CHECK(std::abs(j.p_neutral - 0.1173) < 5e-5);
    CHECK(std::abs(j.p_contradiction - 0.0159) < 5e-5);
}

TEST_CASE("property: softmax sums to one, stays in bounds, matches the oracle") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> logit(-30.0, 30.0);
    for (int i = 0; i < 10000; ++i) {
        const double a = logit(rng), b = logit(rng), c = logit(rng);
        const auto j = softmax3(a, b, c);
        CHECK(j.valid());
        CHECK(std::abs(j.p_entailment + j.p_neutral + j.p_contradiction - 1.0) <= 1e-6);
        const auto ref = oracles::softmax3_brute(a, b, c);
        CHECK(std::abs(j.p_entailment - static_cast<double>(ref.e)) < 1e-12);
    }
}

TEST_CASE("property: softmax is shift-invariant") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> logit(-30.0, 30.0);
    std::uniform_real_distribution<double> shift(-100.0, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const double a = logit(rng), b = logit(rng), c = logit(rng), s = shift(rng);
        const auto j0 = softmax3(a, b, c);
        const auto j1 = softmax3(a + s, b + s, c + s);
        CHECK(std::abs(j0.p_entailment - j1.p_entailment) <= 1e-9);
        CHECK(std::abs(j0.p_neutral - j1.p_neutral) <= 1e-9);
        CHECK(std::abs(j0.p_contradiction - j1.p_contradiction) <= 1e-9);
    }
}

TEST_CASE("label order remaps logits") {
    const auto order = LabelOrder::from_names({"contradiction", "neutral", "entailment"});
    const auto j = judgment_from_logits({-2.0, 0.0, 2.0}, order);
    CHECK(std::abs(j.p_entailment - 0.8668) < 5e-5);

    SUBCASE("identity order") {
        const auto id = LabelOrder::from_names({"entailment", "neutral", "contradiction"});
        const auto k = judgment_from_logits({2.0, 0.0, -2.0}, id);
        CHECK(k.p_entailment == j.p_entailment);
    }
    SUBCASE("manifest errors") {
        CHECK_THROWS_AS(LabelOrder::from_names({"entailment", "neutral", "bogus"}), ParseError);
        CHECK_THROWS_AS(LabelOrder::from_names({"entailment", "neutral", "neutral"}), ParseError);
    }
}

TEST_CASE("mock backend: table hit, identity fallback, configured default") {
    MockBackend mock({{{"the cat sits", "an animal sits"}, {0.90, 0.08, 0.02}}});
    const auto hit = mock.judge("the cat sits", "an animal sits");
    CHECK(hit == EntailmentJudgment{0.90, 0.08, 0.02});

    const auto same = mock.judge("abc", "abc");
    CHECK(same == EntailmentJudgment{1.0, 0.0, 0.0});

    const auto miss = mock.judge("abc", "xyz");
    CHECK(miss == EntailmentJudgment{0.1, 0.8, 0.1});

    SUBCASE("determinism is bit-exact") {
        CHECK(mock.judge("abc", "xyz") == miss);
        CHECK(mock.judge("the cat sits", "an animal sits") == hit);
    }
    SUBCASE("order matters: reversed pair is a miss") {
        CHECK(mock.judge("an animal sits", "the cat sits") == EntailmentJudgment{0.1, 0.8, 0.1});
    }
    SUBCASE("empty texts violate the judge precondition") {
        CHECK_THROWS_AS(mock.judge("", "x"), std::invalid_argument);
        CHECK_THROWS_AS(mock.judge("x", "  \t"), std::invalid_argument);
    }
}

TEST_CASE("mock backend rejects invalid triples at construction") {
    CHECK_THROWS_AS(MockBackend({{{"a", "b"}, {0.7, 0.2, 0.2}}}), std::invalid_argument);
    CHECK_THROWS_AS(MockBackend({}, {0.5, 0.6, -0.1}), std::invalid_argument);
}

TEST_CASE("mock backend from JSON") {
    const char* table = R"js({
        "entries": [
            {"premise":"p1","hypothesis":"h1","entailment":0.7,"neutral":0.2,"contradiction":0.1}
        ],
        "default": {"entailment":0.05,"neutral":0.9,"contradiction":0.05}
    })js";
    auto mock = MockBackend::from_json(table);
    CHECK(mock.table_size() == 1);
    CHECK(mock.judge("p1", "h1").p_entailment == doctest::Approx(0.7));
    CHECK(mock.judge("p1", "other").p_neutral == doctest::Approx(0.9));

    CHECK_THROWS_AS(MockBackend::from_json("not json"), ParseError);
    CHECK_THROWS_AS(MockBackend::from_json(R"js({"entries":[{"premise":"p"}]})js"), ParseError);
    CHECK_THROWS_AS(MockBackend::from_json(
        R"js({"entries":[{"premise":"p","hypothesis":"h","entailment":0.7,"neutral":0.2,"contradiction":0.2}]})js"),
        ParseError);
}

TEST_CASE("property: batch equals singles on random tables") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<MockBackend::Entry> entries;
        std::vector<TextPair> pairs;
        const int n = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            const double a = unit(rng), b = unit(rng) * (1.0 - a);
            TextPair pair{"p" + std::to_string(rng() % 5), "h" + std::to_string(rng() % 5)};
            entries.push_back({pair, {a, b, 1.0 - a - b}});
            pairs.push_back(pair);
        }
        // later duplicate table entries overwrite earlier ones; keep pairs anyway
        MockBackend mock(entries);
        const auto batch = mock.judge_batch(pairs);
        REQUIRE(batch.size() == pairs.size());
        for (std::size_t i = 0; i < pairs.size(); ++i)
            CHECK(batch[i] == mock.judge(pairs[i].premise, pairs[i].hypothesis));
    }
}

TEST_CASE("empty batch yields empty list") {
    MockBackend mock;
    CHECK(mock.judge_batch({}).empty());
}

}  // TEST_SUITE
