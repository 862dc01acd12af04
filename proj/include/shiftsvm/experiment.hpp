#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "shiftsvm/cross_validation.hpp"
#include "shiftsvm/dataio.hpp"
#include "shiftsvm/label_shift.hpp"
#include "shiftsvm/linear_svm.hpp"
#include "shiftsvm/metrics.hpp"
#include "shiftsvm/seeding.hpp"
#include "shiftsvm/smote.hpp"

namespace shiftsvm {

enum class MethodKind {
    csvm,             ///< classification SVM on the raw +-1 labels
    rsvm_omega,       ///< regression SVM on +-1 targets
    rsvm_omega_tilde, ///< regression SVM on the random unique-integer targets
    rsvm_shift,       ///< regression SVM on the one-sided shifted targets, parameter m
    csvm_smote,       ///< classification SVM on a SMOTE-balanced training set
};

struct MethodSpec {
    MethodKind kind = MethodKind::rsvm_omega;
    double m = 1.0;  // rsvm_shift only

    std::string label() const {
        switch (kind) {
            case MethodKind::csvm: return "csvm";
            case MethodKind::rsvm_omega: return "omega";
            case MethodKind::rsvm_omega_tilde: return "omega-tilde";
            case MethodKind::csvm_smote: return "smote";
            case MethodKind::rsvm_shift: {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "shift:%g", m);
                return buf;
            }
        }
        return "?";
    }

    static MethodSpec parse(const std::string& token) {
        MethodSpec s;
        if (token == "csvm") s.kind = MethodKind::csvm;
        else if (token == "omega") s.kind = MethodKind::rsvm_omega;
        else if (token == "omega-tilde") s.kind = MethodKind::rsvm_omega_tilde;
        else if (token == "smote") s.kind = MethodKind::csvm_smote;
        else if (token.rfind("shift:", 0) == 0) {
            s.kind = MethodKind::rsvm_shift;
            try {
                s.m = std::stod(token.substr(6));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad method token '" + token + "': shift wants a number");
            }
        } else {
            throw std::invalid_argument("unknown method '" + token +
                                        "' (try csvm, omega, omega-tilde, shift:<m>, smote)");
        }
        return s;
    }
};

struct FoldResult {
    ConfusionTable confusion;
    double gmean = 0;
    double f1 = 0;
    std::string method;
    int repetition = 0;
    int fold = 0;
};

/// Micro-aggregated view of one repetition: fold confusions summed, metrics
/// recomputed from the sum.
struct RepetitionSummary {
    ConfusionTable confusion;
    double gmean = 0;
    double f1 = 0;
};

struct ExperimentResult {
    std::string method;
    std::string dataset;
    int repetitions = 0;
    int folds = 0;
    std::uint64_t base_seed = 0;
    std::vector<FoldResult> fold_results;     ///< repetitions * folds records
    std::vector<RepetitionSummary> per_rep;   ///< one summary per repetition
    double gmean_mean = 0, gmean_std = 0;     ///< percent, over repetition summaries
    double f1_mean = 0, f1_std = 0;           ///< percent
    ConfusionTable averaged_confusion;        ///< mean of per-repetition summed tables
};

struct ExperimentConfig {
    int repetitions = 10;
    int folds = 10;
    std::uint64_t base_seed = 0;
    SvmParams solver;
    int smote_k = 10;
    bool smote_paper_formula = false;
    int jobs = 1;  ///< repetition-level worker threads
};

namespace detail {

inline void mean_std_percent(const std::vector<double>& values, double& mean, double& stdev) {
    const double n = static_cast<double>(values.size());
    double s = 0;
    for (double v : values) s += v;
    mean = 100.0 * s / n;
    if (values.size() < 2) {
        stdev = 0.0;
        return;
    }
    double ss = 0;
    for (double v : values) {
        const double d = 100.0 * v - mean;
        ss += d * d;
    }
    stdev = std::sqrt(ss / (n - 1.0));
}

/// Train on one fold's training split and predict its test split.
inline ConfusionTable run_fold(const Dataset& ds, const MethodSpec& method,
                               const ExperimentConfig& cfg, std::span<const int> train_idx,
                               std::span<const int> test_idx, int rep, int fold) {
    RowMatrix X = ds.features.select_rows(train_idx);
    std::vector<int> y(train_idx.size());
    for (std::size_t i = 0; i < train_idx.size(); ++i)
        y[i] = ds.labels[static_cast<std::size_t>(train_idx[i])];

    SvmParams solver = cfg.solver;
    solver.shuffle_seed = derive_seed(cfg.base_seed, rep, fold, SeedPurpose::solver_shuffle);

    LinearModel model;
    switch (method.kind) {
        case MethodKind::csvm:
            model = train_svc(X, y, solver);
            break;
        case MethodKind::rsvm_omega:
            model = train_svr(X, plain_binary_targets(y), solver);
            break;
        case MethodKind::rsvm_omega_tilde: {
            const auto ta =
                assign_random_targets(y, derive_seed(cfg.base_seed, rep, fold, SeedPurpose::assignment));
            model = train_svr(X, ta.targets, solver);
            break;
        }
        case MethodKind::rsvm_shift: {
            const auto ta =
                assign_random_targets(y, derive_seed(cfg.base_seed, rep, fold, SeedPurpose::assignment));
            model = train_svr(X, shift_targets(ta, method.m).targets, solver);
            break;
        }
        case MethodKind::csvm_smote: {
            std::vector<int> minority_rows;
            int majority_count = 0;
            for (std::size_t i = 0; i < y.size(); ++i)
                (y[i] == -1 ? (void)minority_rows.push_back(static_cast<int>(i))
                            : (void)++majority_count);
            SmoteParams sp;
            sp.k = cfg.smote_k;
            sp.seed = derive_seed(cfg.base_seed, rep, fold, SeedPurpose::smote);
            sp.paper_formula = cfg.smote_paper_formula;
            const RowMatrix synth = smote_balance(X.select_rows(minority_rows), majority_count, sp);
            for (std::size_t i = 0; i < synth.rows(); ++i) {
                X.append_row(synth.row(i));
                y.push_back(-1);
            }
            model = train_svc(X, y, solver);
            break;
        }
    }

    std::vector<int> truth(test_idx.size()), predicted(test_idx.size());
    for (std::size_t i = 0; i < test_idx.size(); ++i) {
        const auto idx = static_cast<std::size_t>(test_idx[i]);
        truth[i] = ds.labels[idx];
        predicted[i] = predict_class(model, ds.features.row(idx));
    }
    return confusion_table(truth, predicted);
}

}  // namespace detail

/// Repeated stratified k-fold evaluation of one method. Fold layouts depend
/// only on (base_seed, repetition), so different methods run under the same
/// base seed are paired on identical splits. Repetitions may run on several
/// threads; results are independent of the execution order.
inline ExperimentResult run_experiment(const Dataset& ds, const MethodSpec& method,
                                       const ExperimentConfig& cfg) {
    if (cfg.repetitions < 1) throw std::invalid_argument("run_experiment: repetitions must be >= 1");
    if (cfg.folds < 2) throw std::invalid_argument("run_experiment: folds must be >= 2");

    ExperimentResult result;
    result.method = method.label();
    result.dataset = ds.name;
    result.repetitions = cfg.repetitions;
    result.folds = cfg.folds;
    result.base_seed = cfg.base_seed;
    result.per_rep.resize(static_cast<std::size_t>(cfg.repetitions));
    result.fold_results.resize(static_cast<std::size_t>(cfg.repetitions) *
                               static_cast<std::size_t>(cfg.folds));

    auto run_repetition = [&](int rep) {
        const auto folds =
            stratified_kfold(ds.labels, cfg.folds, derive_seed(cfg.base_seed, rep, 0, SeedPurpose::folds));
        ConfusionTable rep_sum;
        for (int fold = 0; fold < cfg.folds; ++fold) {
            const auto& test_idx = folds[static_cast<std::size_t>(fold)];
            const auto train_idx = training_indices(test_idx, ds.size());
            ConfusionTable ct;
            try {
                ct = detail::run_fold(ds, method, cfg, train_idx, test_idx, rep, fold);
            } catch (const std::exception& e) {
                throw std::runtime_error("repetition " + std::to_string(rep) + ", fold " +
                                         std::to_string(fold) + ": " + e.what());
            }
            const Metrics m = metrics(ct);
            FoldResult& fr =
                result.fold_results[static_cast<std::size_t>(rep) * cfg.folds + fold];
            fr.confusion = ct;
            fr.gmean = m.gmean;
            fr.f1 = m.f1;
            fr.method = result.method;
            fr.repetition = rep;
            fr.fold = fold;
            rep_sum += ct;
        }
        RepetitionSummary& rs = result.per_rep[static_cast<std::size_t>(rep)];
        rs.confusion = rep_sum;
        const Metrics m = metrics(rep_sum);
        rs.gmean = m.gmean;
        rs.f1 = m.f1;
    };

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (int rep = 0; rep < cfg.repetitions; ++rep) run_repetition(rep);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto worker = [&] {
            for (;;) {
                const int rep = next.fetch_add(1);
                if (rep >= cfg.repetitions) return;
                try {
                    run_repetition(rep);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        const int n_threads = std::min(jobs, cfg.repetitions);
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    std::vector<double> gmeans, f1s;
    gmeans.reserve(result.per_rep.size());
    f1s.reserve(result.per_rep.size());
    for (const auto& rs : result.per_rep) {
        gmeans.push_back(rs.gmean);
        f1s.push_back(rs.f1);
        result.averaged_confusion += rs.confusion;
    }
    const double R = static_cast<double>(cfg.repetitions);
    result.averaged_confusion.t_minus /= R;
    result.averaged_confusion.f_plus /= R;
    result.averaged_confusion.f_minus /= R;
    result.averaged_confusion.t_plus /= R;
    detail::mean_std_percent(gmeans, result.gmean_mean, result.gmean_std);
    detail::mean_std_percent(f1s, result.f1_mean, result.f1_std);
    return result;
}

}  // namespace shiftsvm
