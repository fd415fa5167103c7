#include "entailguard/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace entailguard {

double accuracy(std::span<const Label> predicted, std::span<const Label> gold) {
    if (predicted.size() != gold.size())
        throw std::invalid_argument("accuracy: length mismatch (" +
                                    std::to_string(predicted.size()) + " vs " +
                                    std::to_string(gold.size()) + ")");
    if (predicted.empty()) throw std::invalid_argument("accuracy: empty input");
    std::size_t agree = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == gold[i]) ++agree;
    return static_cast<double>(agree) / static_cast<double>(predicted.size());
}

std::vector<double> fractional_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j share the value; average of ranks i+1..j+1
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("spearman: length mismatch (" + std::to_string(xs.size()) +
                                    " vs " + std::to_string(ys.size()) + ")");
    if (xs.size() < 2) throw std::invalid_argument("spearman: need at least 2 pairs");
    auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(xs)) throw std::invalid_argument("spearman: first vector is constant");
    if (constant(ys)) throw std::invalid_argument("spearman: second vector is constant");

    const std::vector<double> rx = fractional_ranks(xs);
    const std::vector<double> ry = fractional_ranks(ys);
    const double n = static_cast<double>(rx.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;

    double num = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        const double a = rx[i] - mx;
        const double b = ry[i] - my;
        num += a * b;
        dx += a * a;
        dy += b * b;
    }
    return num / std::sqrt(dx * dy);
}

namespace {

void fill_spearman(MetricsBundle& bundle, const std::vector<double>& scores,
                   const std::vector<double>& gold_p) {
    auto constant = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (scores.size() < 2) {
        bundle.spearman_unavailable_reason = "fewer than 2 pairs";
    } else if (constant(scores)) {
        bundle.spearman_unavailable_reason = "predicted scores are constant";
    } else if (constant(gold_p)) {
        bundle.spearman_unavailable_reason = "gold p(Hallucination) values are constant";
    } else {
        bundle.spearman_rho = spearman(scores, gold_p);
    }
}

MetricsBundle bundle_from(const std::vector<Label>& pred, const std::vector<Label>& gold,
                          const std::vector<double>& scores, const std::vector<double>& gold_p) {
    MetricsBundle b;
    b.n = pred.size();
    if (b.n == 0) {
        b.spearman_unavailable_reason = "no samples";
        return b;
    }
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool pred_h = pred[i] == Label::Hallucination;
        const bool gold_h = gold[i] == Label::Hallucination;
        if (pred_h && gold_h) ++b.tp;
        else if (pred_h && !gold_h) ++b.fp;
        else if (!pred_h && gold_h) ++b.fn;
        else ++b.tn;
    }
    b.accuracy = static_cast<double>(b.tp + b.tn) / static_cast<double>(b.n);
    fill_spearman(b, scores, gold_p);
    return b;
}

}  // namespace

EvalReport evaluate(const std::vector<Verdict>& verdicts, const std::vector<Sample>& gold) {
    if (verdicts.empty()) throw std::invalid_argument("evaluate: no verdicts");

    std::unordered_map<std::string, const Sample*> by_id;
    for (const auto& s : gold) {
        auto [it, inserted] = by_id.emplace(s.id, &s);
        if (!inserted) throw ParseError("evaluate: duplicate id '" + s.id + "' in gold samples");
    }

    struct Columns {
        std::vector<Label> pred, gold;
        std::vector<double> scores, gold_p;
    };
    Columns overall;
    std::map<TaskKind, Columns> per_task;
    per_task[TaskKind::DM];
    per_task[TaskKind::MT];
    per_task[TaskKind::PG];

    for (const auto& v : verdicts) {
        if (!v.ok())
            throw std::invalid_argument("evaluate: verdict " + v.sample_id +
                                        " is a failure record");
        auto it = by_id.find(v.sample_id);
        if (it == by_id.end())
            throw ParseError("evaluate: prediction id '" + v.sample_id +
                             "' not found among gold samples");
        const Sample& s = *it->second;
        if (!s.gold) throw ParseError("evaluate: gold annotation missing for id '" + s.id + "'");

        for (Columns* c : {&overall, &per_task[s.task]}) {
            c->pred.push_back(v.label);
            c->gold.push_back(s.gold->label);
            c->scores.push_back(v.score);
            c->gold_p.push_back(s.gold->p_hallucination);
        }
    }

    EvalReport report;
    report.overall = bundle_from(overall.pred, overall.gold, overall.scores, overall.gold_p);
    for (auto& [task, cols] : per_task)
        report.per_task[task] = bundle_from(cols.pred, cols.gold, cols.scores, cols.gold_p);
    return report;
}

}  // namespace entailguard
