// Command-line front end: dataset summaries, single experiment runs, the
// full reproduction grid, and Wilcoxon comparisons of saved runs.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "shiftsvm/shiftsvm.hpp"

namespace fs = std::filesystem;
using namespace shiftsvm;

namespace {

struct CommonOpts {
    std::string data_dir = "data";
    std::string registry;  // defaults to <data_dir>/registry.txt
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--data-dir", opts.data_dir, "Dataset directory")
        ->envname("SHIFTSVM_DATA_DIR")
        ->capture_default_str();
    cmd->add_option("--registry", opts.registry,
                    "Registry file (default: <data-dir>/registry.txt)");
}

std::string registry_path(const CommonOpts& opts) {
    return opts.registry.empty() ? (fs::path(opts.data_dir) / "registry.txt").string()
                                 : opts.registry;
}

/// A dataset token is either a registry entry name or a path to a
/// single-stanza spec file in the same format.
DatasetSpec resolve_dataset(const std::string& token, const CommonOpts& opts) {
    const std::string reg = registry_path(opts);
    if (fs::exists(reg)) {
        const auto registry = load_registry(reg);
        const auto it = registry.find(token);
        if (it != registry.end()) return it->second;
    }
    if (fs::exists(token)) {
        const auto spec = load_registry(token);
        if (spec.empty()) throw std::runtime_error("spec file '" + token + "' defines no dataset");
        if (spec.size() > 1)
            throw std::runtime_error("spec file '" + token + "' defines more than one dataset");
        return spec.begin()->second;
    }
    throw std::runtime_error("unknown dataset '" + token + "' (not in " + reg +
                             " and not a spec file)");
}

std::string sanitize(const std::string& method_label) {
    std::string out = method_label;
    std::replace(out.begin(), out.end(), ':', '-');
    return out;
}

void validate_shift_bound(const Dataset& ds, const MethodSpec& method) {
    if (method.kind != MethodKind::rsvm_shift) return;
    const double bound = static_cast<double>(ds.n_minus) / static_cast<double>(ds.n_plus);
    if (method.m < bound - 1e-12)
        throw std::runtime_error("m = " + std::to_string(method.m) + " below minimum " +
                                 std::to_string(ds.n_minus) + "/" + std::to_string(ds.n_plus) +
                                 " = " + std::to_string(bound) + " for dataset '" + ds.name + "'");
}

struct SolverOpts {
    double C = 1.0;
    double epsilon = -1.0;  // < 0 means per-fit default
    double tolerance = 1e-3;
    int max_epochs = 1000;
};

void add_solver(CLI::App* cmd, SolverOpts& o) {
    cmd->add_option("--svm-c", o.C, "Box constraint C")->capture_default_str();
    cmd->add_option("--svm-epsilon", o.epsilon,
                    "Regression tube half-width (default: IQR(targets)/13.49 per fit)");
    cmd->add_option("--svm-tol", o.tolerance, "Solver stopping tolerance")->capture_default_str();
    cmd->add_option("--svm-max-epochs", o.max_epochs, "Solver epoch cap")->capture_default_str();
}

SvmParams to_params(const SolverOpts& o) {
    SvmParams p;
    p.C = o.C;
    if (o.epsilon >= 0) p.epsilon = o.epsilon;
    p.tolerance = o.tolerance;
    p.max_epochs = o.max_epochs;
    return p;
}

int default_jobs() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// ---------------------------------------------------------------------------
// run

int cmd_run(const CommonOpts& common, const std::string& dataset_token,
            const std::vector<std::string>& method_tokens, int reps, int folds,
            std::uint64_t seed, const std::string& out_dir, const SolverOpts& solver,
            int smote_k, bool smote_paper_formula, int jobs) {
    const Dataset ds = load_dataset(resolve_dataset(dataset_token, common));

    std::vector<MethodSpec> methods;
    for (const auto& token : method_tokens) {
        methods.push_back(MethodSpec::parse(token));
        validate_shift_bound(ds, methods.back());
    }

    ExperimentConfig cfg;
    cfg.repetitions = reps;
    cfg.folds = folds;
    cfg.base_seed = seed;
    cfg.solver = to_params(solver);
    cfg.smote_k = smote_k;
    cfg.smote_paper_formula = smote_paper_formula;
    cfg.jobs = jobs;

    fs::create_directories(out_dir);
    std::vector<ExperimentResult> results;
    for (const auto& method : methods) {
        results.push_back(run_experiment(ds, method, cfg));
        const auto log_path =
            fs::path(out_dir) / (ds.name + "_" + sanitize(method.label()) + "_folds.csv");
        write_fold_log(log_path.string(), results.back());
        std::cout << "wrote " << log_path.string() << "\n";
    }
    const auto agg_path = fs::path(out_dir) / (ds.name + "_aggregate.csv");
    write_aggregate_csv(agg_path.string(), results);
    std::cout << "wrote " << agg_path.string() << "\n\n";
    std::cout << format_results_table(results);
    return 0;
}

// ---------------------------------------------------------------------------
// tables

struct GridCell {
    ExperimentResult result;
};

std::string pm(double mean, double std_dev) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.1f+-%.1f", mean, std_dev);
    return buf;
}

/// Wide table: rows = methods, two columns (G-mean, F1) per dataset.
std::string format_wide_table(const std::vector<std::string>& methods,
                              const std::vector<std::string>& datasets,
                              const std::map<std::pair<std::string, std::string>,
                                             const ExperimentResult*>& cells,
                              const std::map<std::pair<std::string, std::string>, std::string>&
                                  marks) {
    std::ostringstream os;
    const int mcol = 14, vcol = 13;
    os << std::string(mcol, ' ');
    for (const auto& ds : datasets) {
        std::ostringstream head;
        head << ds;
        std::string h = head.str();
        const std::size_t width = 2 * vcol;
        if (h.size() > width) h = h.substr(0, width);
        const std::size_t pad = width - h.size();
        os << std::string(pad / 2, ' ') << h << std::string(pad - pad / 2, ' ');
    }
    os << "\n" << std::string(mcol, ' ');
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        os << std::setw(vcol) << "G-mean" << std::setw(vcol) << "F1";
    }
    os << "\n" << std::string(mcol + 2 * vcol * datasets.size(), '-') << "\n";
    for (const auto& method : methods) {
        os << std::left << std::setw(mcol) << method << std::right;
        for (const auto& ds : datasets) {
            const auto it = cells.find({method, ds});
            if (it == cells.end()) {
                os << std::setw(vcol) << "-" << std::setw(vcol) << "-";
                continue;
            }
            const auto* r = it->second;
            auto mark = [&](const char* measure) {
                const auto m = marks.find({method + "|" + measure, ds});
                return m == marks.end() ? std::string{} : m->second;
            };
            os << std::setw(vcol) << (pm(r->gmean_mean, r->gmean_std) + mark("gmean"));
            os << std::setw(vcol) << (pm(r->f1_mean, r->f1_std) + mark("f1"));
        }
        os << "\n";
    }
    return os.str();
}

int cmd_tables(const CommonOpts& common, std::vector<std::string> dataset_names, int reps,
               bool paper_scale, std::uint64_t seed, const std::string& out_dir,
               const SolverOpts& solver, int smote_k, bool smote_paper_formula, int jobs) {
    if (paper_scale) {
        reps = 100;
        std::cerr << "paper-scale grid: 100 repetitions per dataset and method; "
                     "expect a long run\n";
    }
    const auto registry = load_registry(registry_path(common));
    if (dataset_names.empty())
        for (const auto& [name, spec] : registry) dataset_names.push_back(name);

    // 20 test folds for the two larger datasets, 10 for the smaller two, so
    // every test fold keeps at least ten minority samples.
    auto fold_count = [](const Dataset& ds) { return ds.n_minus >= 200 ? 20 : 10; };

    const std::vector<std::string> initial_methods{"omega", "omega-tilde", "shift:1"};
    const std::vector<std::string> extended_methods{"smote",     "shift:1",   "shift:1.1",
                                                    "shift:1.2", "shift:1.3", "shift:1.4",
                                                    "shift:1.5"};
    const std::vector<std::string> confusion_methods{"smote", "shift:1", "shift:1.1"};

    std::vector<std::string> all_methods = initial_methods;
    for (const auto& m : extended_methods)
        if (std::find(all_methods.begin(), all_methods.end(), m) == all_methods.end())
            all_methods.push_back(m);

    fs::create_directories(out_dir);
    std::map<std::pair<std::string, std::string>, ExperimentResult> grid;
    std::vector<ExperimentResult> flat;
    for (const auto& name : dataset_names) {
        if (!registry.count(name)) throw std::runtime_error("dataset '" + name + "' not in registry");
        const Dataset ds = load_dataset(registry.at(name));
        ExperimentConfig cfg;
        cfg.repetitions = reps;
        cfg.folds = fold_count(ds);
        cfg.base_seed = seed;
        cfg.solver = to_params(solver);
        cfg.smote_k = smote_k;
        cfg.smote_paper_formula = smote_paper_formula;
        cfg.jobs = jobs;
        for (const auto& token : all_methods) {
            const MethodSpec method = MethodSpec::parse(token);
            validate_shift_bound(ds, method);
            ExperimentResult r = run_experiment(ds, method, cfg);
            const auto log_path =
                fs::path(out_dir) / (ds.name + "_" + sanitize(method.label()) + "_folds.csv");
            write_fold_log(log_path.string(), r);
            std::cout << ds.name << " / " << token << ": G-mean " << std::fixed
                      << std::setprecision(1) << r.gmean_mean << ", F1 " << r.f1_mean << "\n";
            flat.push_back(r);
            grid.emplace(std::make_pair(token, name), std::move(r));
        }
    }

    // Significance marks for the extended table: per dataset and measure,
    // the best shifted run against the SMOTE baseline, paired per repetition.
    std::map<std::pair<std::string, std::string>, std::string> marks;
    for (const auto& name : dataset_names) {
        if (!grid.count({"smote", name})) continue;
        const ExperimentResult& smote = grid.at({"smote", name});
        for (const char* measure : {"gmean", "f1"}) {
            const bool use_gmean = std::string(measure) == "gmean";
            std::string best_token;
            double best_mean = -1;
            for (const auto& token : extended_methods) {
                if (token == "smote") continue;
                const auto& r = grid.at({token, name});
                const double mean = use_gmean ? r.gmean_mean : r.f1_mean;
                if (mean > best_mean) {
                    best_mean = mean;
                    best_token = token;
                }
            }
            const auto& best = grid.at({best_token, name});
            auto series = [&](const ExperimentResult& r) {
                std::vector<double> v;
                for (const auto& rep : r.per_rep) v.push_back(use_gmean ? rep.gmean : rep.f1);
                return v;
            };
            const auto w = wilcoxon_signed_rank(series(best), series(smote));
            if (!w.degenerate && w.p_value < 0.05) {
                const double smote_mean = use_gmean ? smote.gmean_mean : smote.f1_mean;
                if (best_mean > smote_mean)
                    marks[{best_token + "|" + measure, name}] = "*";
                else
                    marks[{std::string("smote|") + measure, name}] = "*";
            }
        }
    }

    auto emit = [&](const std::string& stem, const std::vector<std::string>& methods,
                    bool confusion) {
        std::map<std::pair<std::string, std::string>, const ExperimentResult*> cells;
        std::vector<ExperimentResult> rows;
        for (const auto& m : methods)
            for (const auto& d : dataset_names)
                if (grid.count({m, d})) {
                    cells[{m, d}] = &grid.at({m, d});
                    rows.push_back(grid.at({m, d}));
                }
        const fs::path txt = fs::path(out_dir) / (stem + ".txt");
        std::ofstream out(txt);
        if (confusion)
            out << format_confusion_table(rows);
        else
            out << format_wide_table(methods, dataset_names, cells, marks);
        write_aggregate_csv((fs::path(out_dir) / (stem + ".csv")).string(), rows);
        std::cout << "wrote " << txt.string() << "\n";
    };
    emit("table_initial", initial_methods, false);
    emit("table_extended", extended_methods, false);
    emit("table_confusion", confusion_methods, true);
    return 0;
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(const std::string& path_a, const std::string& path_b) {
    const FoldLog log_a = read_fold_log(path_a);
    const FoldLog log_b = read_fold_log(path_b);
    for (const char* key : {"dataset", "repetitions", "folds", "base_seed"}) {
        if (log_a.meta_at(key) != log_b.meta_at(key))
            throw std::runtime_error(std::string("result files disagree on ") + key + " (" +
                                     log_a.meta_at(key) + " vs " + log_b.meta_at(key) +
                                     "); runs are not paired");
    }
    const ExperimentResult a = aggregate_fold_log(log_a);
    const ExperimentResult b = aggregate_fold_log(log_b);

    auto report = [&](const char* measure, auto getter, double mean_a, double mean_b) {
        std::vector<double> va, vb;
        for (const auto& rep : a.per_rep) va.push_back(getter(rep));
        for (const auto& rep : b.per_rep) vb.push_back(getter(rep));
        const auto w = wilcoxon_signed_rank(va, vb);
        const bool significant = !w.degenerate && w.p_value < 0.05;
        std::cout << measure << ": W+ = " << w.w_plus << ", W- = " << w.w_minus
                  << ", W = " << w.statistic << ", two-sided p = " << std::setprecision(6)
                  << w.p_value << (w.exact ? " (exact)" : " (normal approx.)") << "\n";
        std::cout << "  " << a.method << " mean " << std::fixed << std::setprecision(2) << mean_a
                  << (significant && mean_a > mean_b ? " *" : "") << " | " << b.method << " mean "
                  << mean_b << (significant && mean_b > mean_a ? " *" : "") << "  ->  "
                  << (significant ? "significant at 5%" : "not significant at 5%") << "\n";
        std::cout.unsetf(std::ios::fixed);
    };
    std::cout << "dataset " << a.dataset << ", " << a.repetitions << " repetitions, " << a.folds
              << " folds, base seed " << a.base_seed << "\n";
    report("G-mean", [](const RepetitionSummary& r) { return r.gmean; }, a.gmean_mean,
           b.gmean_mean);
    report("F1", [](const RepetitionSummary& r) { return r.f1; }, a.f1_mean, b.f1_mean);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Imbalanced binary classification with one-sided label-shift regression"};
    app.require_subcommand(1);

    // summary
    auto* summary = app.add_subcommand("summary", "Show dataset properties");
    CommonOpts sum_common;
    std::string sum_dataset;
    add_common(summary, sum_common);
    summary->add_option("--dataset", sum_dataset, "Registry name or spec file")->required();

    // run
    auto* run = app.add_subcommand("run", "Evaluate methods on one dataset");
    CommonOpts run_common;
    std::string run_dataset, run_out = "results";
    std::vector<std::string> run_methods;
    int run_reps = 10, run_folds = 10, run_smote_k = 10, run_jobs = default_jobs();
    std::uint64_t run_seed = 0;
    bool run_paper_smote = false;
    SolverOpts run_solver;
    add_common(run, run_common);
    run->add_option("--dataset", run_dataset, "Registry name or spec file")->required();
    run->add_option("--method", run_methods,
                    "csvm | omega | omega-tilde | shift:<m> | smote (repeatable)")
        ->required();
    run->add_option("--reps", run_reps, "Repetitions")->capture_default_str();
    run->add_option("--folds", run_folds, "Folds per repetition")->capture_default_str();
    run->add_option("--seed", run_seed, "Base seed")->capture_default_str();
    run->add_option("--out-dir", run_out, "Output directory")->capture_default_str();
    run->add_option("--smote-k", run_smote_k, "SMOTE neighbour count")->capture_default_str();
    run->add_flag("--smote-paper-formula", run_paper_smote,
                  "Use the literal printed interpolation direction");
    run->add_option("--jobs", run_jobs, "Worker threads over repetitions")->capture_default_str();
    add_solver(run, run_solver);

    // tables
    auto* tables = app.add_subcommand("tables", "Reproduce the full results grid");
    CommonOpts tab_common;
    std::vector<std::string> tab_datasets;
    std::string tab_out = "results";
    int tab_reps = 10, tab_smote_k = 10, tab_jobs = default_jobs();
    std::uint64_t tab_seed = 0;
    bool tab_paper_scale = false, tab_paper_smote = false;
    SolverOpts tab_solver;
    add_common(tables, tab_common);
    tables->add_option("--datasets", tab_datasets, "Subset of registry datasets (default: all)");
    tables->add_option("--reps", tab_reps, "Repetitions (desk scale)")->capture_default_str();
    tables->add_flag("--paper-scale", tab_paper_scale, "Run 100 repetitions");
    tables->add_option("--seed", tab_seed, "Base seed")->capture_default_str();
    tables->add_option("--out-dir", tab_out, "Output directory")->capture_default_str();
    tables->add_option("--smote-k", tab_smote_k, "SMOTE neighbour count")->capture_default_str();
    tables->add_flag("--smote-paper-formula", tab_paper_smote,
                     "Use the literal printed interpolation direction");
    tables->add_option("--jobs", tab_jobs, "Worker threads over repetitions")
        ->capture_default_str();
    add_solver(tables, tab_solver);

    // compare
    auto* compare = app.add_subcommand("compare", "Wilcoxon test between two saved runs");
    std::string cmp_a, cmp_b;
    compare->add_option("file_a", cmp_a, "Fold log of the first method")->required();
    compare->add_option("file_b", cmp_b, "Fold log of the second method")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (summary->parsed()) {
            const Dataset ds = load_dataset(resolve_dataset(sum_dataset, sum_common));
            const Summary s = dataset_summary(ds);
            std::cout << s.name << ": " << s.samples << " samples, " << s.features
                      << " features, " << s.n_minus << " : " << s.n_plus << " (" << s.minority_percent
                      << "% minority)\n";
            return 0;
        }
        if (run->parsed())
            return cmd_run(run_common, run_dataset, run_methods, run_reps, run_folds, run_seed,
                           run_out, run_solver, run_smote_k, run_paper_smote, run_jobs);
        if (tables->parsed())
            return cmd_tables(tab_common, tab_datasets, tab_reps, tab_paper_scale, tab_seed,
                              tab_out, tab_solver, tab_smote_k, tab_paper_smote, tab_jobs);
        if (compare->parsed()) return cmd_compare(cmp_a, cmp_b);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
