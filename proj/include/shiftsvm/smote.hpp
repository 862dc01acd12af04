#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "shiftsvm/matrix.hpp"
#include "shiftsvm/seeding.hpp"

namespace shiftsvm {

struct SmoteParams {
    int k = 10;                 ///< nearest-neighbour count, clipped to |minority| - 1
    std::uint64_t seed = 0;
    bool paper_formula = false; ///< x + r*(x - y) instead of x + r*(y - x)
};

/// Indices of the k nearest minority neighbours of minority sample
/// `self_index` by Euclidean distance, self excluded, distance ties broken
/// by lower index. k is clipped to |minority| - 1.
inline std::vector<int> knn_minority(const RowMatrix& minority, int self_index, int k) {
    if (minority.rows() < 2)
        throw std::invalid_argument("knn_minority: need at least two minority samples");
    if (k < 1) throw std::invalid_argument("knn_minority: k must be >= 1");
    const std::size_t n = minority.rows();
    const auto self = minority.row(static_cast<std::size_t>(self_index));
    std::vector<std::pair<double, int>> by_dist;
    by_dist.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        if (static_cast<int>(j) == self_index) continue;
        const auto other = minority.row(j);
        double d2 = 0.0;
        for (std::size_t c = 0; c < other.size(); ++c) {
            const double diff = other[c] - self[c];
            d2 += diff * diff;
        }
        by_dist.emplace_back(d2, static_cast<int>(j));
    }
    const std::size_t k_eff = std::min<std::size_t>(static_cast<std::size_t>(k), n - 1);
    std::sort(by_dist.begin(), by_dist.end());
    std::vector<int> out(k_eff);
    for (std::size_t i = 0; i < k_eff; ++i) out[i] = by_dist[i].second;
    return out;
}

/// One synthetic point on the segment (or, with paper_formula, its mirror)
/// between base and neighbour; one interpolation factor per coordinate.
inline std::vector<double> smote_interpolate(std::span<const double> base,
                                             std::span<const double> neighbor,
                                             std::span<const double> r, bool paper_formula) {
    std::vector<double> out(base.size());
    for (std::size_t c = 0; c < base.size(); ++c) {
        const double gap = paper_formula ? base[c] - neighbor[c] : neighbor[c] - base[c];
        out[c] = base[c] + r[c] * gap;
    }
    return out;
}

/// Synthetic minority samples bringing the class up to exact balance:
/// returns majority_count - |minority| points. Per point: a uniformly random
/// base sample, a uniformly random one of its k nearest minority neighbours,
/// and a fresh r in [0,1) per coordinate.
inline RowMatrix smote_balance(const RowMatrix& minority, int majority_count,
                               const SmoteParams& params) {
    const long long deficit = static_cast<long long>(majority_count) -
                              static_cast<long long>(minority.rows());
    if (deficit < 0)
        throw std::invalid_argument("smote_balance: majority count below minority count");
    RowMatrix synthetic(0, minority.cols());
    if (deficit == 0) return synthetic;
    if (minority.rows() < 2)
        throw std::invalid_argument("smote_balance: need at least two minority samples");

    const std::size_t n = minority.rows();
    const std::size_t k_eff = std::min<std::size_t>(static_cast<std::size_t>(params.k), n - 1);
    std::vector<std::vector<int>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i)
        neighbors[i] = knn_minority(minority, static_cast<int>(i), static_cast<int>(k_eff));

    std::mt19937_64 rng(params.seed);
    std::vector<double> r(minority.cols());
    for (long long s = 0; s < deficit; ++s) {
        const std::size_t base = draw_below(rng, n);
        const int nb = neighbors[base][draw_below(rng, k_eff)];
        for (double& ri : r) ri = draw_unit(rng);
        synthetic.append_row(smote_interpolate(minority.row(base),
                                               minority.row(static_cast<std::size_t>(nb)), r,
                                               params.paper_formula));
    }
    return synthetic;
}

}  // namespace shiftsvm
