#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "shiftsvm/smote.hpp"

using namespace shiftsvm;

namespace {

RowMatrix matrix_from(const std::vector<std::vector<double>>& rows) {
    RowMatrix m(0, rows.empty() ? 0 : rows.front().size());
    for (const auto& r : rows) m.append_row(r);
    return m;
}

}  // namespace

TEST_CASE("nearest neighbour selection", "[smote]") {
    const RowMatrix minority = matrix_from({{0, 0}, {1, 0}, {3, 0}});
    SECTION("closest point wins") {
        const auto nn = knn_minority(minority, 0, 1);
        REQUIRE(nn.size() == 1);
        CHECK(nn[0] == 1);
    }
    SECTION("k clips to the available neighbours") {
        const RowMatrix five = matrix_from({{0.}, {1.}, {2.}, {3.}, {4.}});
        const auto nn = knn_minority(five, 0, 10);
        CHECK(nn.size() == 4);
    }
    SECTION("distance ties break toward the lower index") {
        const RowMatrix sym = matrix_from({{0, 0}, {1, 0}, {-1, 0}, {0, 1}});
        const auto nn = knn_minority(sym, 0, 3);
        REQUIRE(nn.size() == 3);
        CHECK(nn[0] == 1);
        CHECK(nn[1] == 2);
        CHECK(nn[2] == 3);
    }
    SECTION("self is never its own neighbour") {
        const auto nn = knn_minority(minority, 1, 2);
        for (int i : nn) CHECK(i != 1);
    }
    CHECK_THROWS_AS(knn_minority(matrix_from({{0.0}}), 0, 1), std::invalid_argument);
}

TEST_CASE("interpolation hits the midpoint at r = 0.5", "[smote]") {
    const std::vector<double> base{0, 0}, neighbor{2, 2}, r{0.5, 0.5};
    CHECK(smote_interpolate(base, neighbor, r, false) == std::vector<double>{1.0, 1.0});
    // the mirrored form walks away from the neighbour instead
    CHECK(smote_interpolate(base, neighbor, r, true) == std::vector<double>{-1.0, -1.0});
}

TEST_CASE("balancing produces exactly the deficit", "[smote]") {
    const RowMatrix minority = matrix_from({{0, 0}, {2, 2}});
    SmoteParams params;
    params.k = 5;
    params.seed = 3;
    const RowMatrix synth = smote_balance(minority, 4, params);
    REQUIRE(synth.rows() == 2);
    // one generating pair exists; per-coordinate r keeps each coordinate
    // inside that pair's span
    for (std::size_t i = 0; i < synth.rows(); ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(synth(i, j) >= 0.0);
            CHECK(synth(i, j) <= 2.0);
        }
    }
    SECTION("zero deficit produces nothing") {
        CHECK(smote_balance(minority, 2, params).rows() == 0);
    }
    SECTION("negative deficit and tiny minority are rejected") {
        CHECK_THROWS_AS(smote_balance(minority, 1, params), std::invalid_argument);
        CHECK_THROWS_AS(smote_balance(matrix_from({{1.0}}), 5, params), std::invalid_argument);
    }
}

TEST_CASE("collinear minority points spawn collinear synthetics", "[smote]") {
    // an axis-parallel line survives per-coordinate interpolation untouched
    const RowMatrix minority = matrix_from({{0, 4}, {1, 4}, {3, 4}});  // y = 4
    SmoteParams params;
    params.k = 2;
    params.seed = 17;
    const RowMatrix synth = smote_balance(minority, 40, params);
    REQUIRE(synth.rows() == 37);
    for (std::size_t i = 0; i < synth.rows(); ++i) {
        CHECK(std::fabs(synth(i, 1) - 4.0) < 1e-12);  // residual from the line
        CHECK(synth(i, 0) >= 0.0);
        CHECK(synth(i, 0) <= 3.0);
    }
}

TEST_CASE("every synthetic lies between its base and neighbour componentwise", "[smote]") {
    std::mt19937_64 rng(88);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 10;
        const std::size_t d = 1 + rng() % 4;
        RowMatrix minority(n, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) minority(i, j) = 10.0 * draw_unit(rng) - 5.0;
        SmoteParams params;
        params.k = 1 + static_cast<int>(rng() % 12);
        params.seed = rng();
        const int majority = static_cast<int>(n) + static_cast<int>(rng() % 20);
        const RowMatrix synth = smote_balance(minority, majority, params);
        REQUIRE(synth.rows() == static_cast<std::size_t>(majority) - n);

        for (std::size_t s = 0; s < synth.rows(); ++s) {
            // the generating pair is not recorded; membership on some
            // minority-pair box is the checkable consequence
            bool on_some_pair = false;
            for (std::size_t a = 0; a < n && !on_some_pair; ++a) {
                for (std::size_t b = 0; b < n && !on_some_pair; ++b) {
                    if (a == b) continue;
                    bool inside = true;
                    for (std::size_t j = 0; j < d; ++j) {
                        const double lo = std::min(minority(a, j), minority(b, j));
                        const double hi = std::max(minority(a, j), minority(b, j));
                        if (synth(s, j) < lo - 1e-9 || synth(s, j) > hi + 1e-9) {
                            inside = false;
                            break;
                        }
                    }
                    on_some_pair = inside;
                }
            }
            CHECK(on_some_pair);
        }
    }
}

TEST_CASE("seeded generation is deterministic", "[smote]") {
    const RowMatrix minority = matrix_from({{0, 0}, {1, 2}, {4, 1}, {2, 2}});
    SmoteParams params;
    params.k = 3;
    params.seed = 99;
    const RowMatrix a = smote_balance(minority, 9, params);
    const RowMatrix b = smote_balance(minority, 9, params);
    CHECK(a.data() == b.data());
    params.seed = 100;
    const RowMatrix c = smote_balance(minority, 9, params);
    CHECK(a.data() != c.data());
}
