#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "oracle.hpp"
#include "shiftsvm/wilcoxon.hpp"

using namespace shiftsvm;

namespace {

std::vector<double> zeros(std::size_t n) { return std::vector<double>(n, 0.0); }

}  // namespace

TEST_CASE("worked small cases", "[wilcoxon]") {
    SECTION("all positive differences 1,2,3") {
        const std::vector<double> a{1, 2, 3};
        const auto r = wilcoxon_signed_rank(a, zeros(3));
        CHECK(r.w_minus == 0.0);
        CHECK(r.w_plus == 6.0);
        CHECK(r.statistic == 0.0);
        CHECK(r.exact);
        CHECK(r.p_value == Catch::Approx(0.25).margin(1e-12));
    }
    SECTION("mixed signs 1,-2,3") {
        const std::vector<double> a{1, -2, 3};
        const auto r = wilcoxon_signed_rank(a, zeros(3));
        CHECK(r.w_plus == 4.0);
        CHECK(r.w_minus == 2.0);
        CHECK(r.p_value == Catch::Approx(0.75).margin(1e-12));
    }
    SECTION("identical samples are degenerate") {
        const std::vector<double> a{1.5, 2.5, 3.5};
        const auto r = wilcoxon_signed_rank(a, a);
        CHECK(r.degenerate);
        CHECK(r.p_value == 1.0);
        CHECK(r.n_effective == 0);
    }
    SECTION("zero differences are dropped before ranking") {
        const std::vector<double> a{5, 1, 2, 3};
        const std::vector<double> b{5, 0, 0, 0};
        const auto r = wilcoxon_signed_rank(a, b);
        CHECK(r.n_effective == 3);
        CHECK(r.p_value == Catch::Approx(0.25).margin(1e-12));
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(wilcoxon_signed_rank(std::vector<double>{1}, std::vector<double>{1, 2}),
                        std::invalid_argument);
        CHECK_THROWS_AS(wilcoxon_signed_rank(std::vector<double>{}, std::vector<double>{}),
                        std::invalid_argument);
    }
}

TEST_CASE("exact path equals full enumeration for n <= 12", "[wilcoxon]") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<double> a(n), b(n, 0.0);
        for (auto& v : a) {
            // small integers force plenty of ties and some zeros
            v = static_cast<double>(static_cast<long long>(rng() % 9) - 4);
        }
        const auto r = wilcoxon_signed_rank(a, b);
        const double brute = oracle::wilcoxon_two_sided_p(a);
        if (r.degenerate) {
            CHECK(brute == 1.0);
        } else {
            REQUIRE(r.exact);
            CHECK(r.p_value == Catch::Approx(brute).margin(1e-12));
        }
    }
}

TEST_CASE("two-sided p is symmetric in the sample order", "[wilcoxon]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 11;
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = static_cast<double>(rng() % 100) / 10.0;
            b[i] = static_cast<double>(rng() % 100) / 10.0;
        }
        const auto r1 = wilcoxon_signed_rank(a, b);
        const auto r2 = wilcoxon_signed_rank(b, a);
        CHECK(r1.p_value == Catch::Approx(r2.p_value).margin(1e-12));
        CHECK(r1.w_plus == Catch::Approx(r2.w_minus).margin(1e-12));
    }
}

TEST_CASE("normal approximation tracks enumeration at n = 12", "[wilcoxon]") {
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        // distinct nonzero magnitudes: ranks form the unit lattice the
        // 0.5 continuity correction is built for (ties halve the lattice
        // step and can push the plain-normal error past this bound)
        std::vector<double> a(12), b(12, 0.0);
        std::set<long long> used;
        for (auto& v : a) {
            long long mag;
            do {
                mag = 1 + static_cast<long long>(rng() % 100);
            } while (!used.insert(mag).second);
            v = static_cast<double>(mag) * (rng() % 2 ? 1.0 : -1.0);
        }
        const auto exact = wilcoxon_signed_rank(a, b, /*exact_limit=*/12);
        const auto approx = wilcoxon_signed_rank(a, b, /*exact_limit=*/0);
        REQUIRE(exact.exact);
        REQUIRE(!approx.exact);
        worst = std::max(worst, std::fabs(exact.p_value - approx.p_value));
    }
    CHECK(worst <= 0.02);
}
