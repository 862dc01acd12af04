#pragma once

#include <cstdint>
#include <random>

namespace shiftsvm {

/// What a derived seed is consumed for. Each purpose gets an independent
/// stream so that, e.g., changing the SMOTE neighbour count never perturbs
/// the fold layout of the same repetition.
enum class SeedPurpose : std::uint64_t {
    folds = 1,
    assignment = 2,
    smote = 3,
    solver_shuffle = 4,
};

namespace detail {
// splitmix64 finalizer; full-period mixing of a 64-bit state.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Deterministic seed for (repetition, fold, purpose) derived from a base
/// seed by chained splitmix64 mixing.
inline std::uint64_t derive_seed(std::uint64_t base, int repetition, int fold, SeedPurpose purpose) {
    std::uint64_t s = detail::splitmix64(base);
    s = detail::splitmix64(s ^ static_cast<std::uint64_t>(repetition + 1));
    s = detail::splitmix64(s ^ (static_cast<std::uint64_t>(fold + 1) << 20));
    s = detail::splitmix64(s ^ (static_cast<std::uint64_t>(purpose) << 40));
    return s;
}

/// Uniform integer in [0, n). Plain modulo keeps the draw bit-identical
/// across standard library implementations.
inline std::size_t draw_below(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double draw_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// In-place Fisher-Yates shuffle driven by draw_below.
template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = draw_below(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace shiftsvm
