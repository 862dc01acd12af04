#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace shiftsvm {

struct WilcoxonResult {
    double w_plus = 0;      ///< sum of ranks of positive differences
    double w_minus = 0;     ///< sum of ranks of negative differences
    double statistic = 0;   ///< W = min(w_plus, w_minus)
    double p_value = 1.0;   ///< two-sided
    int n_effective = 0;    ///< pairs left after dropping zero differences
    bool exact = false;     ///< exact null distribution used
    bool degenerate = false;///< every difference was zero
};

namespace detail {

/// Average ranks of |d|, ascending, ties share their mean rank.
inline std::vector<double> abs_ranks(const std::vector<double>& d) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return std::fabs(d[a]) < std::fabs(d[b]); });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && std::fabs(d[order[j + 1]]) == std::fabs(d[order[i]])) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // ranks are 1-based
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

/// Exact two-sided p under the sign-flip null, conditional on |d|.
/// Average ranks are half-integers, so doubling makes every weight an
/// integer and the full distribution of 2*W+ fits in a small count table.
inline double exact_two_sided_p(const std::vector<double>& ranks, double w_plus) {
    const std::size_t n = ranks.size();
    long long total2 = 0;
    std::vector<long long> w2(n);
    for (std::size_t i = 0; i < n; ++i) {
        w2[i] = std::llround(2.0 * ranks[i]);
        total2 += w2[i];
    }
    std::vector<double> count(static_cast<std::size_t>(total2) + 1, 0.0);
    count[0] = 1.0;
    long long reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
        reach += w2[i];
        for (long long s = reach; s >= w2[i]; --s)
            count[static_cast<std::size_t>(s)] += count[static_cast<std::size_t>(s - w2[i])];
    }
    const double denom = std::ldexp(1.0, static_cast<int>(n));  // 2^n patterns
    const long long obs2 = std::llround(2.0 * w_plus);
    double le = 0.0, ge = 0.0;
    for (long long s = 0; s <= total2; ++s) {
        if (s <= obs2) le += count[static_cast<std::size_t>(s)];
        if (s >= obs2) ge += count[static_cast<std::size_t>(s)];
    }
    return std::min(1.0, 2.0 * std::min(le, ge) / denom);
}

}  // namespace detail

/// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences
/// are dropped, tied |differences| get average ranks. The null distribution
/// is enumerated exactly for n_effective <= exact_limit; above that a normal
/// approximation with tie and continuity corrections is used.
inline WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                           int exact_limit = 12) {
    if (a.size() != b.size())
        throw std::invalid_argument("wilcoxon_signed_rank: samples differ in length");
    if (a.empty())
        throw std::invalid_argument("wilcoxon_signed_rank: empty samples");

    std::vector<double> d;
    d.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        if (diff != 0.0) d.push_back(diff);
    }

    WilcoxonResult r;
    r.n_effective = static_cast<int>(d.size());
    if (d.empty()) {
        r.degenerate = true;
        r.p_value = 1.0;
        return r;
    }

    const std::vector<double> ranks = detail::abs_ranks(d);
    for (std::size_t i = 0; i < d.size(); ++i)
        (d[i] > 0 ? r.w_plus : r.w_minus) += ranks[i];
    r.statistic = std::min(r.w_plus, r.w_minus);

    const double n = static_cast<double>(d.size());
    if (r.n_effective <= exact_limit) {
        r.exact = true;
        r.p_value = detail::exact_two_sided_p(ranks, r.w_plus);
        return r;
    }

    // Tie correction: each group of t tied ranks removes (t^3 - t)/48
    // from the null variance.
    std::vector<double> sorted_ranks = ranks;
    std::sort(sorted_ranks.begin(), sorted_ranks.end());
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < sorted_ranks.size()) {
        std::size_t j = i;
        while (j + 1 < sorted_ranks.size() && sorted_ranks[j + 1] == sorted_ranks[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += (t * t * t - t);
        i = j + 1;
    }
    const double mean = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
        r.p_value = 1.0;  // all |d| tied into one group of zeros cannot happen; guard anyway
        return r;
    }
    const double z = std::max(0.0, std::fabs(r.w_plus - mean) - 0.5) / std::sqrt(var);
    r.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return r;
}

}  // namespace shiftsvm
