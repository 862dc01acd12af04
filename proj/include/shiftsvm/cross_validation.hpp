#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftsvm/seeding.hpp"

namespace shiftsvm {

/// Stratified k-fold split: returns k disjoint test-index sets covering all
/// samples, with each class dealt round-robin after a per-class shuffle.
/// Per fold, each class count differs from floor(class_size / k) by at most
/// one, and both classes place their remainder samples in the lowest fold
/// indices, which keeps n_minus <= n_plus inside every training fold.
inline std::vector<std::vector<int>> stratified_kfold(std::span<const int> labels, int k,
                                                      std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_kfold: need k >= 2");
    std::vector<int> minority_idx, majority_idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == -1)
            minority_idx.push_back(static_cast<int>(i));
        else if (labels[i] == 1)
            majority_idx.push_back(static_cast<int>(i));
        else
            throw std::invalid_argument("stratified_kfold: labels must be -1 or +1");
    }
    for (const auto* cls : {&minority_idx, &majority_idx}) {
        if (static_cast<int>(cls->size()) < k)
            throw std::invalid_argument("stratified_kfold: a class has fewer than k = " +
                                        std::to_string(k) + " samples");
    }

    std::mt19937_64 rng(seed);
    std::vector<std::vector<int>> folds(static_cast<std::size_t>(k));
    for (auto* cls : {&minority_idx, &majority_idx}) {
        shuffle_in_place(*cls, rng);
        for (std::size_t j = 0; j < cls->size(); ++j)
            folds[j % static_cast<std::size_t>(k)].push_back((*cls)[j]);
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

/// Complement of one test fold: all indices not in it, ascending.
inline std::vector<int> training_indices(std::span<const int> test_fold, std::size_t n_samples) {
    std::vector<char> in_test(n_samples, 0);
    for (int i : test_fold) in_test[static_cast<std::size_t>(i)] = 1;
    std::vector<int> train;
    train.reserve(n_samples - test_fold.size());
    for (std::size_t i = 0; i < n_samples; ++i)
        if (!in_test[i]) train.push_back(static_cast<int>(i));
    return train;
}

}  // namespace shiftsvm
