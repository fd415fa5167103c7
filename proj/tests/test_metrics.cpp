#include "entailguard/metrics.hpp"

#include <algorithm>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"

using namespace entailguard;

namespace {

constexpr Label H = Label::Hallucination;
constexpr Label N = Label::NotHallucination;

std::vector<double> random_vector(std::mt19937& rng, std::size_t n, int distinct_values) {
    // low distinct_values forces ties
    std::uniform_int_distribution<int> bucket(0, distinct_values - 1);
    std::vector<double> v(n);
    for (auto& x : v) x = bucket(rng) / static_cast<double>(distinct_values);
    return v;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("accuracy counts agreements") {
    CHECK(accuracy(std::vector{H, H, N}, std::vector{H, N, N}) == doctest::Approx(2.0 / 3.0));
    CHECK(accuracy(std::vector{H, N, H, N}, std::vector{H, N, H, N}) == 1.0);
    CHECK(accuracy(std::vector{H, H}, std::vector{N, N}) == 0.0);

    CHECK_THROWS_AS(accuracy(std::vector{H}, std::vector{H, N}), std::invalid_argument);
    CHECK_THROWS_AS(accuracy(std::vector<Label>{}, std::vector<Label>{}), std::invalid_argument);
}

TEST_CASE("accuracy is permutation-equivariant") {
    std::mt19937 rng(41);
    std::vector<Label> pred, gold;
    for (int i = 0; i < 50; ++i) {
        pred.push_back(rng() % 2 ? H : N);
        gold.push_back(rng() % 2 ? H : N);
    }
    const double base = accuracy(pred, gold);
    std::vector<std::size_t> perm(pred.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (int t = 0; t < 20; ++t) {
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Label> p2, g2;
        for (auto i : perm) {
            p2.push_back(pred[i]);
            g2.push_back(gold[i]);
        }
        CHECK(accuracy(p2, g2) == base);
    }
}

TEST_CASE("fractional ranks average over tie runs") {
    const auto r = fractional_ranks(std::vector{0.2, 0.2, 0.8});
    CHECK(r == std::vector{1.5, 1.5, 3.0});
    const auto r2 = fractional_ranks(std::vector{3.0, 1.0, 2.0});
    CHECK(r2 == std::vector{3.0, 1.0, 2.0});
    const auto r3 = fractional_ranks(std::vector{5.0, 5.0, 5.0, 1.0});
    CHECK(r3 == std::vector{3.0, 3.0, 3.0, 1.0});
}

TEST_CASE("spearman basics") {
    CHECK(spearman(std::vector{1.0, 2.0, 3.0}, std::vector{10.0, 20.0, 30.0}) == 1.0);
    CHECK(spearman(std::vector{1.0, 2.0, 3.0}, std::vector{3.0, 2.0, 1.0}) == -1.0);
    // frozen from the counting-rank + Pearson oracle: ranks (1.5,1.5,3) vs (1,2,3)
    CHECK(spearman(std::vector{0.2, 0.2, 0.8}, std::vector{0.0, 0.4, 1.0}) ==
          doctest::Approx(0.86602540378443864).epsilon(1e-12));
}

TEST_CASE("spearman degenerate inputs are signaled") {
    CHECK_THROWS_AS(spearman(std::vector{1.0}, std::vector{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(spearman(std::vector{1.0, 2.0}, std::vector{1.0, 2.0, 3.0}),
                    std::invalid_argument);
    CHECK_THROWS_WITH_AS(spearman(std::vector{2.0, 2.0, 2.0}, std::vector{1.0, 2.0, 3.0}),
                         doctest::Contains("constant"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(spearman(std::vector{1.0, 2.0, 3.0}, std::vector{7.0, 7.0, 7.0}),
                         doctest::Contains("constant"), std::invalid_argument);
}

TEST_CASE("spearman matches the brute-force oracle on exhaustive small permutations") {
    for (std::size_t n = 2; n <= 6; ++n) {
        std::vector<double> identity(n), perm(n);
        std::iota(identity.begin(), identity.end(), 1.0);
        std::iota(perm.begin(), perm.end(), 1.0);
        do {
            const double ours = spearman(perm, identity);
            const double brute = static_cast<double>(oracles::spearman_brute(perm, identity));
            const double closed =
                static_cast<double>(oracles::spearman_closed_form(perm, identity));
            CHECK(std::abs(ours - brute) < 1e-12);
            CHECK(std::abs(ours - closed) < 1e-12);  // no ties here
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("property: spearman matches the oracle on random tied vectors") {
    std::mt19937 rng(42);
    int done = 0;
    while (done < 1000) {
        std::uniform_int_distribution<std::size_t> len(2, 20);
        const std::size_t n = len(rng);
        const auto xs = random_vector(rng, n, 4);
        const auto ys = random_vector(rng, n, 4);
        if (std::all_of(xs.begin(), xs.end(), [&](double v) { return v == xs[0]; })) continue;
        if (std::all_of(ys.begin(), ys.end(), [&](double v) { return v == ys[0]; })) continue;
        const double ours = spearman(xs, ys);
        CHECK(std::abs(ours - static_cast<double>(oracles::spearman_brute(xs, ys))) < 1e-12);
        CHECK(ours >= -1.0 - 1e-12);
        CHECK(ours <= 1.0 + 1e-12);
        ++done;
    }
}

TEST_CASE("property: symmetry, monotone invariance, reversal") {
    std::mt19937 rng(43);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> len(3, 15);
        const std::size_t n = len(rng);
        std::vector<double> xs(n), ys(n);
        for (auto& v : xs) v = unit(rng);
        for (auto& v : ys) v = unit(rng);

        const double base = spearman(xs, ys);
        CHECK(spearman(ys, xs) == doctest::Approx(base).epsilon(1e-12));

        // strictly increasing piecewise transform preserves ranks
        std::vector<double> fx(n);
        for (std::size_t i = 0; i < n; ++i)
            fx[i] = xs[i] < 0.5 ? 3.0 * xs[i] : 10.0 + std::exp(xs[i]);
        CHECK(spearman(fx, xs) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(spearman(fx, ys) == doctest::Approx(base).epsilon(1e-11));

        // positive affine transform
        std::vector<double> axs(n);
        for (std::size_t i = 0; i < n; ++i) axs[i] = 2.5 * xs[i] + 7.0;
        CHECK(spearman(axs, ys) == doctest::Approx(base).epsilon(1e-11));

        // order reversal negates
        std::vector<double> neg(n);
        for (std::size_t i = 0; i < n; ++i) neg[i] = -xs[i];
        CHECK(spearman(neg, ys) == doctest::Approx(-base).epsilon(1e-11));
    }
}

namespace {

Verdict make_verdict(std::string id, Label label, double score) {
    Verdict v;
    v.sample_id = std::move(id);
    v.label = label;
    v.score = score;
    return v;
}

Sample gold_sample(std::string id, TaskKind task, Label label, double p) {
    Sample s;
    s.id = std::move(id);
    s.task = task;
    s.hyp = "h";
    s.tgt = "t";
    s.src = "s";
    s.gold = GoldAnnotation{label, p};
    return s;
}

}  // namespace

TEST_CASE("evaluate on a perfect prediction set") {
    const std::vector<Verdict> verdicts = {
        make_verdict("1", H, 0.9), make_verdict("2", N, 0.1),
        make_verdict("3", H, 0.8), make_verdict("4", N, 0.2)};
    const std::vector<Sample> gold = {
        gold_sample("1", TaskKind::DM, H, 0.9), gold_sample("2", TaskKind::DM, N, 0.1),
        gold_sample("3", TaskKind::MT, H, 0.8), gold_sample("4", TaskKind::PG, N, 0.2)};
    const auto report = evaluate(verdicts, gold);
    CHECK(report.overall.n == 4);
    CHECK(report.overall.accuracy == 1.0);
    CHECK(report.overall.tp == 2);
    CHECK(report.overall.tn == 2);
    CHECK(report.overall.fp == 0);
    CHECK(report.overall.fn == 0);
    CHECK(report.overall.tp + report.overall.fp + report.overall.tn + report.overall.fn ==
          report.overall.n);
    REQUIRE(report.overall.spearman_rho.has_value());
    CHECK(*report.overall.spearman_rho == 1.0);  // scores equal gold p exactly
    CHECK(report.per_task.at(TaskKind::DM).n == 2);
    CHECK(report.per_task.at(TaskKind::MT).n == 1);
    CHECK(!report.per_task.at(TaskKind::MT).spearman_rho.has_value());  // single pair
}

TEST_CASE("evaluate mixed fixture matches the brute-force oracle") {
    const std::vector<Verdict> verdicts = {
        make_verdict("a", H, 0.9), make_verdict("b", H, 0.7), make_verdict("c", N, 0.3),
        make_verdict("d", N, 0.3), make_verdict("e", H, 0.6), make_verdict("f", N, 0.2)};
    const std::vector<Sample> gold = {
        gold_sample("a", TaskKind::DM, H, 1.0), gold_sample("b", TaskKind::DM, N, 0.4),
        gold_sample("c", TaskKind::MT, N, 0.2), gold_sample("d", TaskKind::MT, H, 0.6),
        gold_sample("e", TaskKind::PG, H, 0.8), gold_sample("f", TaskKind::PG, N, 0.0)};
    const auto report = evaluate(verdicts, gold);

    // agreements: a, c, e, f -> 4/6
    CHECK(report.overall.accuracy == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
    CHECK(report.overall.tp == 2);  // a, e
    CHECK(report.overall.fp == 1);  // b
    CHECK(report.overall.tn == 2);  // c, f
    CHECK(report.overall.fn == 1);  // d

    const std::vector<double> scores = {0.9, 0.7, 0.3, 0.3, 0.6, 0.2};
    const std::vector<double> gold_p = {1.0, 0.4, 0.2, 0.6, 0.8, 0.0};
    REQUIRE(report.overall.spearman_rho.has_value());
    CHECK(std::abs(*report.overall.spearman_rho -
                   static_cast<double>(oracles::spearman_brute(scores, gold_p))) < 1e-12);
}

TEST_CASE("evaluate error paths") {
    const std::vector<Verdict> verdicts = {make_verdict("1", H, 0.9)};

    CHECK_THROWS_AS(evaluate({}, {}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(evaluate(verdicts, {gold_sample("2", TaskKind::DM, H, 1.0)}),
                         doctest::Contains("not found"), ParseError);

    Sample no_gold = gold_sample("1", TaskKind::DM, H, 1.0);
    no_gold.gold.reset();
    CHECK_THROWS_WITH_AS(evaluate(verdicts, {no_gold}),
                         doctest::Contains("gold annotation missing"), ParseError);

    CHECK_THROWS_WITH_AS(evaluate(verdicts, {gold_sample("1", TaskKind::DM, H, 1.0),
                                             gold_sample("1", TaskKind::DM, N, 0.0)}),
                         doctest::Contains("duplicate"), ParseError);

    Verdict failed = make_verdict("1", H, 0.9);
    failed.error = "backend blew up";
    CHECK_THROWS_AS(evaluate({failed}, {gold_sample("1", TaskKind::DM, H, 1.0)}),
                    std::invalid_argument);
}

TEST_CASE("constant vectors mark spearman unavailable with a reason") {
    const std::vector<Verdict> verdicts = {make_verdict("1", H, 0.5), make_verdict("2", N, 0.5)};
    const std::vector<Sample> gold = {gold_sample("1", TaskKind::DM, H, 0.9),
                                      gold_sample("2", TaskKind::DM, N, 0.1)};
    const auto report = evaluate(verdicts, gold);
    CHECK(!report.overall.spearman_rho.has_value());
    CHECK(report.overall.spearman_unavailable_reason.find("constant") != std::string::npos);
    CHECK(report.overall.accuracy == 1.0);  // accuracy still fine
}

}  // TEST_SUITE
