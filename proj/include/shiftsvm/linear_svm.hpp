#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "shiftsvm/matrix.hpp"
#include "shiftsvm/seeding.hpp"

namespace shiftsvm {

struct SvmParams {
    double C = 1.0;                   ///< box constraint, > 0
    std::optional<double> epsilon;    ///< SVR tube half-width; default_epsilon(targets) when unset
    bool fit_bias = true;             ///< augment a constant-1 feature (regularized bias)
    double tolerance = 1e-3;          ///< stop when the max projected-gradient violation drops below
    int max_epochs = 1000;
    std::uint64_t shuffle_seed = 0;   ///< per-epoch coordinate permutation seed
    bool record_objective_trace = false;  ///< keep the dual objective after every epoch
};

enum class ModelKind { classifier, regressor };

struct SolverDiagnostics {
    int epochs = 0;
    double final_violation = 0;
    double dual_objective = 0;
    bool converged = false;
    std::vector<double> dual_coeffs;      ///< alpha (SVC, in [0,C]) or beta (SVR, in [-C,C])
    std::vector<double> objective_trace;  ///< filled when record_objective_trace is set
};

/// Trained affine model f(x) = <w, x> + b.
struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    ModelKind kind = ModelKind::classifier;
    SolverDiagnostics diagnostics;
};

inline double predict_raw(const LinearModel& model, std::span<const double> x) {
    if (x.size() != model.weights.size())
        throw std::invalid_argument("predict_raw: expected " + std::to_string(model.weights.size()) +
                                    " features, got " + std::to_string(x.size()));
    return dot(model.weights, x) + model.bias;
}

/// Sign decoding; a raw score of exactly zero goes to the majority (+1).
inline int predict_class(const LinearModel& model, std::span<const double> x) {
    return predict_raw(model, x) < 0.0 ? -1 : 1;
}

/// Default regression tube: IQR(targets) / 13.49 with quartiles read off the
/// sorted list by linear interpolation at positions 0.25*(n+1) and
/// 0.75*(n+1), clamped to [1, n].
inline double default_epsilon(std::span<const double> targets) {
    if (targets.empty()) throw std::invalid_argument("default_epsilon: empty targets");
    std::vector<double> s(targets.begin(), targets.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    auto quantile = [&](double q) {
        double pos = std::clamp(q * (n + 1.0), 1.0, n);
        const std::size_t lo = static_cast<std::size_t>(pos) - 1;
        const double frac = pos - std::floor(pos);
        if (lo + 1 >= s.size() || frac == 0.0) return s[lo];
        return s[lo] + frac * (s[lo + 1] - s[lo]);
    };
    return (quantile(0.75) - quantile(0.25)) / 13.49;
}

namespace detail {

inline void validate_common(const RowMatrix& X, const SvmParams& p) {
    if (p.C <= 0) throw std::invalid_argument("SvmParams: C must be positive");
    if (p.tolerance <= 0) throw std::invalid_argument("SvmParams: tolerance must be positive");
    if (p.max_epochs < 1) throw std::invalid_argument("SvmParams: max_epochs must be >= 1");
    for (double v : X.data())
        if (!std::isfinite(v)) throw std::invalid_argument("training features must be finite");
}

inline std::vector<double> squared_norms(const RowMatrix& X, bool fit_bias) {
    std::vector<double> qd(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i)
        qd[i] = dot(X.row(i), X.row(i)) + (fit_bias ? 1.0 : 0.0);
    return qd;
}

}  // namespace detail

/// Primal objectives of the augmented formulation (the bias, when fitted, is
/// part of the regularizer). Used by the solver diagnostics and the tests'
/// independent oracles alike.
inline double svc_primal_objective(const RowMatrix& X, std::span<const int> y, double C,
                                   bool fit_bias, std::span<const double> w, double b) {
    double obj = 0.5 * (dot(w, w) + (fit_bias ? b * b : 0.0));
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const double margin = y[i] * (dot(w, X.row(i)) + b);
        obj += C * std::max(0.0, 1.0 - margin);
    }
    return obj;
}

inline double svr_primal_objective(const RowMatrix& X, std::span<const double> t, double C,
                                   double epsilon, bool fit_bias, std::span<const double> w,
                                   double b) {
    double obj = 0.5 * (dot(w, w) + (fit_bias ? b * b : 0.0));
    for (std::size_t i = 0; i < X.rows(); ++i) {
        const double resid = std::fabs(t[i] - (dot(w, X.row(i)) + b));
        obj += C * std::max(0.0, resid - epsilon);
    }
    return obj;
}

// Dual coordinate descent for the L1-hinge SVC dual
//
//   min_a  0.5 a^T Q a - e^T a,   0 <= a_i <= C,
//
// where Q_ij = y_i y_j (x_i . x_j + 1[fit_bias]). One dual variable at a
// time, random permutation per epoch, no shrinking. Stops when the largest
// absolute projected gradient over an epoch falls below params.tolerance.
inline LinearModel train_svc(const RowMatrix& X, std::span<const int> y, const SvmParams& params) {
    detail::validate_common(X, params);
    if (y.size() != X.rows()) throw std::invalid_argument("train_svc: label count mismatch");
    int n_minus = 0, n_plus = 0;
    for (int label : y) {
        if (label == -1)
            ++n_minus;
        else if (label == 1)
            ++n_plus;
        else
            throw std::invalid_argument("train_svc: labels must be -1 or +1");
    }
    if (n_minus == 0 || n_plus == 0)
        throw std::invalid_argument("train_svc: need at least one sample of each class");

    const std::size_t n = X.rows();
    const double C = params.C;
    const std::vector<double> qd = detail::squared_norms(X, params.fit_bias);

    std::vector<double> alpha(n, 0.0), w(X.cols(), 0.0);
    double b = 0.0;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(params.shuffle_seed);

    LinearModel model;
    model.kind = ModelKind::classifier;
    auto dual_objective = [&]() {
        double sum_alpha = 0.0;
        for (double a : alpha) sum_alpha += a;
        return sum_alpha - 0.5 * (dot(w, w) + (params.fit_bias ? b * b : 0.0));
    };

    double violation = 0.0;
    int epoch = 0;
    for (; epoch < params.max_epochs; ++epoch) {
        shuffle_in_place(order, rng);
        violation = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t i = order[s];
            if (qd[i] == 0.0) continue;  // zero row without bias: no influence
            const double yi = static_cast<double>(y[i]);
            const double G = yi * (dot(w, X.row(i)) + (params.fit_bias ? b : 0.0)) - 1.0;

            double pg = G;
            if (alpha[i] == 0.0)
                pg = std::min(G, 0.0);
            else if (alpha[i] == C)
                pg = std::max(G, 0.0);
            violation = std::max(violation, std::fabs(pg));

            if (std::fabs(pg) > 1e-12) {
                const double old = alpha[i];
                alpha[i] = std::clamp(old - G / qd[i], 0.0, C);
                const double d = (alpha[i] - old) * yi;
                if (d != 0.0) {
                    auto xi = X.row(i);
                    for (std::size_t j = 0; j < w.size(); ++j) w[j] += d * xi[j];
                    if (params.fit_bias) b += d;
                }
            }
        }
        if (params.record_objective_trace) model.diagnostics.objective_trace.push_back(dual_objective());
        if (violation <= params.tolerance) {
            ++epoch;
            model.diagnostics.converged = true;
            break;
        }
    }

    for (double& a : alpha) a = std::clamp(a, 0.0, C);
    model.weights = std::move(w);
    model.bias = params.fit_bias ? b : 0.0;
    model.diagnostics.epochs = epoch;
    model.diagnostics.final_violation = violation;
    model.diagnostics.dual_objective = dual_objective();
    model.diagnostics.dual_coeffs = std::move(alpha);
    return model;
}

// Dual coordinate descent for the L1-loss epsilon-SVR dual
//
//   min_beta  0.5 beta^T Q beta + eps * sum|beta_i| - sum t_i beta_i,
//   -C <= beta_i <= C,   Q_ij = x_i . x_j + 1[fit_bias],
//
// following the one-variable Newton step with soft-threshold kink handling.
inline LinearModel train_svr(const RowMatrix& X, std::span<const double> t,
                             const SvmParams& params) {
    detail::validate_common(X, params);
    if (t.size() != X.rows()) throw std::invalid_argument("train_svr: target count mismatch");
    if (X.rows() < 2) throw std::invalid_argument("train_svr: need at least two samples");
    for (double v : t)
        if (!std::isfinite(v)) throw std::invalid_argument("train_svr: targets must be finite");

    const double eps = params.epsilon ? *params.epsilon : default_epsilon(t);
    if (eps < 0) throw std::invalid_argument("train_svr: epsilon must be non-negative");

    const std::size_t n = X.rows();
    const double C = params.C;
    const std::vector<double> qd = detail::squared_norms(X, params.fit_bias);

    std::vector<double> beta(n, 0.0), w(X.cols(), 0.0);
    double b = 0.0;
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(params.shuffle_seed);

    LinearModel model;
    model.kind = ModelKind::regressor;
    auto dual_objective = [&]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += t[i] * beta[i] - eps * std::fabs(beta[i]);
        return acc - 0.5 * (dot(w, w) + (params.fit_bias ? b * b : 0.0));
    };

    double violation = 0.0;
    int epoch = 0;
    for (; epoch < params.max_epochs; ++epoch) {
        shuffle_in_place(order, rng);
        violation = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t i = order[s];
            if (qd[i] == 0.0) continue;
            const double G = dot(w, X.row(i)) + (params.fit_bias ? b : 0.0) - t[i];
            const double Gp = G + eps;
            const double Gn = G - eps;

            double pg = 0.0;
            if (beta[i] == 0.0) {
                if (Gp < 0)
                    pg = -Gp;
                else if (Gn > 0)
                    pg = Gn;
            } else if (beta[i] >= C) {
                if (Gp > 0) pg = Gp;
            } else if (beta[i] <= -C) {
                if (Gn < 0) pg = -Gn;
            } else if (beta[i] > 0) {
                pg = std::fabs(Gp);
            } else {
                pg = std::fabs(Gn);
            }
            violation = std::max(violation, std::fabs(pg));

            double d;
            if (Gp < qd[i] * beta[i])
                d = -Gp / qd[i];
            else if (Gn > qd[i] * beta[i])
                d = -Gn / qd[i];
            else
                d = -beta[i];
            if (std::fabs(d) < 1e-12) continue;

            const double old = beta[i];
            beta[i] = std::clamp(old + d, -C, C);
            const double delta = beta[i] - old;
            if (delta != 0.0) {
                auto xi = X.row(i);
                for (std::size_t j = 0; j < w.size(); ++j) w[j] += delta * xi[j];
                if (params.fit_bias) b += delta;
            }
        }
        if (params.record_objective_trace) model.diagnostics.objective_trace.push_back(dual_objective());
        if (violation <= params.tolerance) {
            ++epoch;
            model.diagnostics.converged = true;
            break;
        }
    }

    for (double& v : beta) v = std::clamp(v, -C, C);
    model.weights = std::move(w);
    model.bias = params.fit_bias ? b : 0.0;
    model.diagnostics.epochs = epoch;
    model.diagnostics.final_violation = violation;
    model.diagnostics.dual_objective = dual_objective();
    model.diagnostics.dual_coeffs = std::move(beta);
    return model;
}

}  // namespace shiftsvm
