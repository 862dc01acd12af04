#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

namespace shiftsvm {

/// Binary confusion table, minority-class oriented. Rows are true labels,
/// columns predicted labels; the minority class carries label -1.
/// Entries are reals so that averaged tables can be represented too.
struct ConfusionTable {
    double t_minus = 0;  ///< true minority   (true -1, predicted -1)
    double f_plus = 0;   ///< false majority  (true -1, predicted +1)
    double f_minus = 0;  ///< false minority  (true +1, predicted -1)
    double t_plus = 0;   ///< true majority   (true +1, predicted +1)

    ConfusionTable& operator+=(const ConfusionTable& o) {
        t_minus += o.t_minus;
        f_plus += o.f_plus;
        f_minus += o.f_minus;
        t_plus += o.t_plus;
        return *this;
    }
};

struct Metrics {
    double specificity = 0;  ///< T+ / (F- + T+), majority recall
    double precision = 0;    ///< T- / (T- + F-), minority precision
    double recall = 0;       ///< T- / (T- + F+), minority recall (sensitivity)
    double gmean = 0;        ///< sqrt(recall * specificity)
    double f1 = 0;           ///< 2 * precision * recall / (precision + recall)
};

inline ConfusionTable confusion_table(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size())
        throw std::invalid_argument("confusion_table: label vectors differ in length");
    ConfusionTable ct;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const int t = truth[i];
        const int p = predicted[i];
        if ((t != -1 && t != 1) || (p != -1 && p != 1))
            throw std::invalid_argument("confusion_table: labels must be -1 or +1");
        if (t == -1)
            (p == -1 ? ct.t_minus : ct.f_plus) += 1;
        else
            (p == -1 ? ct.f_minus : ct.t_plus) += 1;
    }
    return ct;
}

/// All five measures from a confusion table. A zero denominator yields 0
/// for the affected measure, so degenerate folds stay comparable.
inline Metrics metrics(const ConfusionTable& ct) {
    if (ct.t_minus < 0 || ct.f_plus < 0 || ct.f_minus < 0 || ct.t_plus < 0)
        throw std::invalid_argument("metrics: confusion entries must be non-negative");
    auto ratio = [](double num, double den) { return den > 0 ? num / den : 0.0; };
    Metrics m;
    m.specificity = ratio(ct.t_plus, ct.f_minus + ct.t_plus);
    m.precision = ratio(ct.t_minus, ct.t_minus + ct.f_minus);
    m.recall = ratio(ct.t_minus, ct.t_minus + ct.f_plus);
    m.gmean = std::sqrt(m.recall * m.specificity);
    m.f1 = (m.precision + m.recall) > 0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

/// Round half away from zero; used when displaying averaged tables.
inline long long round_count(double v) {
    return static_cast<long long>(v < 0 ? std::ceil(v - 0.5) : std::floor(v + 0.5));
}

}  // namespace shiftsvm
