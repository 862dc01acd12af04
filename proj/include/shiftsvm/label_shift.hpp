#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftsvm/seeding.hpp"

namespace shiftsvm {

/// Bijective assignment of unique regression targets to training samples.
/// Minority samples carry the negative targets {-(n_minus+delta_m), ...,
/// -(1+delta_m)}, majority samples the positive targets {1, ..., n_plus}.
struct TargetAssignment {
    std::vector<double> targets;  ///< one target per sample, aligned to input order
    double m = 0;                 ///< multiplier; delta_m = m * n_plus - n_minus
    double delta_m = 0;
    int n_minus = 0;
    int n_plus = 0;
};

/// Identity embedding of the +-1 labels as regression targets.
inline std::vector<double> plain_binary_targets(std::span<const int> labels) {
    std::vector<double> t(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) t[i] = static_cast<double>(labels[i]);
    return t;
}

/// Random bijection: minority gets a permutation of {-n_minus, ..., -1},
/// majority a permutation of {1, ..., n_plus}. The unshifted target set,
/// i.e. delta_m = 0 and m = n_minus / n_plus.
inline TargetAssignment assign_random_targets(std::span<const int> labels, std::uint64_t seed) {
    std::vector<int> minority_idx, majority_idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == -1)
            minority_idx.push_back(static_cast<int>(i));
        else if (labels[i] == 1)
            majority_idx.push_back(static_cast<int>(i));
        else
            throw std::invalid_argument("assign_random_targets: labels must be -1 or +1");
    }
    if (minority_idx.empty() || majority_idx.empty())
        throw std::invalid_argument("assign_random_targets: both classes must be present");

    TargetAssignment ta;
    ta.n_minus = static_cast<int>(minority_idx.size());
    ta.n_plus = static_cast<int>(majority_idx.size());
    ta.m = static_cast<double>(ta.n_minus) / static_cast<double>(ta.n_plus);
    ta.delta_m = 0.0;
    ta.targets.assign(labels.size(), 0.0);

    std::mt19937_64 rng(seed);
    std::vector<double> neg(ta.n_minus), pos(ta.n_plus);
    for (int v = 0; v < ta.n_minus; ++v) neg[v] = static_cast<double>(-ta.n_minus + v);  // -n_minus..-1
    for (int v = 0; v < ta.n_plus; ++v) pos[v] = static_cast<double>(v + 1);             // 1..n_plus
    shuffle_in_place(neg, rng);
    shuffle_in_place(pos, rng);
    for (std::size_t i = 0; i < minority_idx.size(); ++i) ta.targets[minority_idx[i]] = neg[i];
    for (std::size_t i = 0; i < majority_idx.size(); ++i) ta.targets[majority_idx[i]] = pos[i];
    return ta;
}

/// One-sided shift: every negative target moves left by
/// delta_m = m * n_plus - n_minus; positive targets stay put.
inline TargetAssignment shift_targets(const TargetAssignment& assignment, double m) {
    double delta =
        m * static_cast<double>(assignment.n_plus) - static_cast<double>(assignment.n_minus);
    if (delta < -1e-9)
        throw std::invalid_argument(
            "shift_targets: m = " + std::to_string(m) + " below minimum n_minus/n_plus = " +
            std::to_string(static_cast<double>(assignment.n_minus) / assignment.n_plus));
    delta = std::max(delta, 0.0);  // absorb rounding when m == n_minus/n_plus
    TargetAssignment out = assignment;
    out.m = m;
    out.delta_m = delta;
    // The assignment already carries its own delta; apply only the change.
    const double change = delta - assignment.delta_m;
    for (double& t : out.targets)
        if (t < 0) t -= change;
    return out;
}

}  // namespace shiftsvm
