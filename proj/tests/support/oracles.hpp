#pragma once

// Independent reference implementations used only by tests. These
// deliberately take different routes than the library: counting-based ranks
// instead of sort-runs, long double accumulation, naive formulas.

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracles {

// Fractional ranks by pairwise counting: rank = 1 + #less + (#equal - 1)/2.
inline std::vector<long double> counting_ranks(const std::vector<double>& v) {
    std::vector<long double> ranks(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t less = 0, equal = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] < v[i]) ++less;
            if (v[j] == v[i]) ++equal;
        }
        ranks[i] = 1.0L + static_cast<long double>(less) +
                   (static_cast<long double>(equal) - 1.0L) / 2.0L;
    }
    return ranks;
}

// Naive Pearson over the counting ranks, in long double.
inline long double spearman_brute(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto rx = counting_ranks(xs);
    const auto ry = counting_ranks(ys);
    const auto n = static_cast<long double>(rx.size());
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sx += rx[i];
        sy += ry[i];
        sxx += rx[i] * rx[i];
        syy += ry[i] * ry[i];
        sxy += rx[i] * ry[i];
    }
    const long double cov = n * sxy - sx * sy;
    const long double vx = n * sxx - sx * sx;
    const long double vy = n * syy - sy * sy;
    return cov / std::sqrt(vx * vy);
}

// Classical no-ties shortcut 1 - 6*sum(d^2)/(n(n^2-1)). Invalid under ties.
inline long double spearman_closed_form(const std::vector<double>& xs,
                                        const std::vector<double>& ys) {
    const auto rx = counting_ranks(xs);
    const auto ry = counting_ranks(ys);
    const auto n = static_cast<long double>(rx.size());
    long double d2 = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
    return 1.0L - 6.0L * d2 / (n * (n * n - 1.0L));
}

// High-precision softmax over three logits.
struct Triple {
    long double e, n, c;
};

inline Triple softmax3_brute(long double a, long double b, long double c) {
    const long double m = std::max({a, b, c});
    const long double ea = std::exp(a - m), eb = std::exp(b - m), ec = std::exp(c - m);
    const long double sum = ea + eb + ec;
    return {ea / sum, eb / sum, ec / sum};
}

}  // namespace oracles
