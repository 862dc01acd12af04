#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "shiftsvm/cross_validation.hpp"

using namespace shiftsvm;

namespace {

std::vector<int> labels_for(int n_minus, int n_plus, std::uint64_t mix_seed = 0) {
    std::vector<int> y(static_cast<std::size_t>(n_minus), -1);
    y.insert(y.end(), static_cast<std::size_t>(n_plus), 1);
    std::mt19937_64 rng(mix_seed);
    shuffle_in_place(y, rng);
    return y;
}

struct FoldCounts {
    int minority = 0;
    int majority = 0;
};

std::vector<FoldCounts> count_folds(const std::vector<std::vector<int>>& folds,
                                    const std::vector<int>& labels) {
    std::vector<FoldCounts> out(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f)
        for (int i : folds[f])
            (labels[static_cast<std::size_t>(i)] == -1 ? out[f].minority : out[f].majority) += 1;
    return out;
}

}  // namespace

TEST_CASE("ionosphere-shaped split keeps 12-13 minority samples per fold", "[cross-validation]") {
    const auto y = labels_for(126, 225, 11);
    const auto folds = stratified_kfold(y, 10, 2024);
    REQUIRE(folds.size() == 10);
    for (const auto& fc : count_folds(folds, y)) {
        CHECK(fc.minority >= 12);
        CHECK(fc.minority <= 13);
        CHECK(fc.minority >= 10);  // every test fold keeps >= 10 minority samples
        CHECK(fc.majority >= 22);
        CHECK(fc.majority <= 23);
    }
}

TEST_CASE("breast-cancer-shaped split at k=20", "[cross-validation]") {
    const auto y = labels_for(239, 444, 3);
    const auto folds = stratified_kfold(y, 20, 7);
    int elevens = 0;
    for (const auto& fc : count_folds(folds, y)) {
        CHECK(fc.minority >= 11);
        CHECK(fc.minority <= 12);
        if (fc.minority == 11) ++elevens;
    }
    CHECK(elevens == 1);  // 239 = 19*12 + 11
}

TEST_CASE("balanced toy set divides exactly", "[cross-validation]") {
    const auto y = labels_for(5, 5, 123);
    const auto folds = stratified_kfold(y, 5, 9);
    for (const auto& fc : count_folds(folds, y)) {
        CHECK(fc.minority == 1);
        CHECK(fc.majority == 1);
    }
}

TEST_CASE("a class smaller than k is rejected", "[cross-validation]") {
    CHECK_THROWS_AS(stratified_kfold(labels_for(3, 40), 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(stratified_kfold(labels_for(10, 10), 1, 0), std::invalid_argument);
}

TEST_CASE("folds partition the dataset, counts within one of n/k", "[cross-validation]") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 9);
        const int n_minus = k + static_cast<int>(rng() % 60);
        const int n_plus = n_minus + static_cast<int>(rng() % 60);
        const auto y = labels_for(n_minus, n_plus, rng());
        const auto folds = stratified_kfold(y, k, rng());

        std::set<int> seen;
        for (const auto& fold : folds)
            for (int i : fold) CHECK(seen.insert(i).second);
        CHECK(seen.size() == y.size());

        for (const auto& fc : count_folds(folds, y)) {
            CHECK(fc.minority >= n_minus / k);
            CHECK(fc.minority <= n_minus / k + 1);
            CHECK(fc.majority >= n_plus / k);
            CHECK(fc.majority <= n_plus / k + 1);
            // remainder alignment keeps every fold (and so every training
            // split) with minority <= majority
            CHECK(fc.minority <= fc.majority);
        }
    }
}

TEST_CASE("deterministic under a fixed seed", "[cross-validation]") {
    const auto y = labels_for(30, 50, 77);
    CHECK(stratified_kfold(y, 7, 42) == stratified_kfold(y, 7, 42));
    CHECK(stratified_kfold(y, 7, 42) != stratified_kfold(y, 7, 43));
}

TEST_CASE("training indices complement the test fold", "[cross-validation]") {
    const auto y = labels_for(6, 10, 5);
    const auto folds = stratified_kfold(y, 4, 1);
    for (const auto& fold : folds) {
        const auto train = training_indices(fold, y.size());
        CHECK(train.size() + fold.size() == y.size());
        for (int i : train) CHECK(std::find(fold.begin(), fold.end(), i) == fold.end());
    }
}
