#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftsvm/experiment.hpp"
#include "shiftsvm/metrics.hpp"

namespace shiftsvm {

/// A fold log read back from disk: run metadata plus one record per fold.
struct FoldLog {
    std::map<std::string, std::string> meta;
    std::vector<FoldResult> records;

    std::string meta_at(const std::string& key) const {
        auto it = meta.find(key);
        if (it == meta.end()) throw std::runtime_error("fold log is missing meta key '" + key + "'");
        return it->second;
    }
};

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace detail

/// Line-delimited fold log: `# key=value` metadata lines, a header line,
/// then one CSV record per fold.
inline void write_fold_log(const std::string& path, const ExperimentResult& r) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write fold log '" + path + "'");
    out << "# shiftsvm-fold-log v1\n";
    out << "# dataset=" << r.dataset << "\n";
    out << "# method=" << r.method << "\n";
    out << "# repetitions=" << r.repetitions << "\n";
    out << "# folds=" << r.folds << "\n";
    out << "# base_seed=" << r.base_seed << "\n";
    out << "method,dataset,rep,fold,t_minus,f_plus,f_minus,t_plus,gmean,f1\n";
    for (const auto& fr : r.fold_results) {
        out << fr.method << ',' << r.dataset << ',' << fr.repetition << ',' << fr.fold << ','
            << static_cast<long long>(fr.confusion.t_minus) << ','
            << static_cast<long long>(fr.confusion.f_plus) << ','
            << static_cast<long long>(fr.confusion.f_minus) << ','
            << static_cast<long long>(fr.confusion.t_plus) << ','
            << detail::format_double(fr.gmean) << ',' << detail::format_double(fr.f1) << '\n';
    }
}

inline FoldLog read_fold_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fold log '" + path + "'");
    FoldLog log;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                std::string key = line.substr(1, eq - 1);
                key.erase(0, key.find_first_not_of(' '));
                key.erase(key.find_last_not_of(' ') + 1);
                log.meta[key] = line.substr(eq + 1);
            }
            continue;
        }
        if (!header_seen) {  // column header line
            header_seen = true;
            continue;
        }
        std::istringstream is(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(is, field, ',')) fields.push_back(field);
        if (fields.size() != 10)
            throw std::runtime_error("bad fold log record in '" + path + "': " + line);
        FoldResult fr;
        fr.method = fields[0];
        fr.repetition = std::stoi(fields[2]);
        fr.fold = std::stoi(fields[3]);
        fr.confusion.t_minus = std::stod(fields[4]);
        fr.confusion.f_plus = std::stod(fields[5]);
        fr.confusion.f_minus = std::stod(fields[6]);
        fr.confusion.t_plus = std::stod(fields[7]);
        fr.gmean = std::stod(fields[8]);
        fr.f1 = std::stod(fields[9]);
        log.records.push_back(std::move(fr));
    }
    return log;
}

/// Rebuild the per-repetition micro summaries and overall aggregates from
/// raw fold records, exactly as run_experiment computes them.
inline ExperimentResult aggregate_fold_log(const FoldLog& log) {
    ExperimentResult r;
    r.dataset = log.meta_at("dataset");
    r.method = log.meta_at("method");
    r.repetitions = std::stoi(log.meta_at("repetitions"));
    r.folds = std::stoi(log.meta_at("folds"));
    r.base_seed = std::stoull(log.meta_at("base_seed"));
    r.fold_results = log.records;
    r.per_rep.assign(static_cast<std::size_t>(r.repetitions), {});
    for (const auto& fr : log.records) {
        if (fr.repetition < 0 || fr.repetition >= r.repetitions)
            throw std::runtime_error("fold log repetition index out of range");
        r.per_rep[static_cast<std::size_t>(fr.repetition)].confusion += fr.confusion;
    }
    std::vector<double> gmeans, f1s;
    for (auto& rs : r.per_rep) {
        const Metrics m = metrics(rs.confusion);
        rs.gmean = m.gmean;
        rs.f1 = m.f1;
        gmeans.push_back(rs.gmean);
        f1s.push_back(rs.f1);
        r.averaged_confusion += rs.confusion;
    }
    const double R = static_cast<double>(r.repetitions);
    r.averaged_confusion.t_minus /= R;
    r.averaged_confusion.f_plus /= R;
    r.averaged_confusion.f_minus /= R;
    r.averaged_confusion.t_plus /= R;
    detail::mean_std_percent(gmeans, r.gmean_mean, r.gmean_std);
    detail::mean_std_percent(f1s, r.f1_mean, r.f1_std);
    return r;
}

/// Machine-readable aggregate: one CSV row per (dataset, method).
inline void write_aggregate_csv(const std::string& path,
                                const std::vector<ExperimentResult>& results) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write aggregate '" + path + "'");
    out << "dataset,method,repetitions,folds,base_seed,"
           "gmean_mean,gmean_std,f1_mean,f1_std,t_minus,f_plus,f_minus,t_plus\n";
    for (const auto& r : results) {
        out << r.dataset << ',' << r.method << ',' << r.repetitions << ',' << r.folds << ','
            << r.base_seed << ',' << detail::format_double(r.gmean_mean) << ','
            << detail::format_double(r.gmean_std) << ',' << detail::format_double(r.f1_mean) << ','
            << detail::format_double(r.f1_std) << ','
            << detail::format_double(r.averaged_confusion.t_minus) << ','
            << detail::format_double(r.averaged_confusion.f_plus) << ','
            << detail::format_double(r.averaged_confusion.f_minus) << ','
            << detail::format_double(r.averaged_confusion.t_plus) << '\n';
    }
}

/// Aligned text table of mean +- std percentages, one row per method.
inline std::string format_results_table(const std::vector<ExperimentResult>& results) {
    std::ostringstream os;
    os << std::left << std::setw(14) << "method" << std::setw(16) << "dataset" << std::right
       << std::setw(16) << "G-mean" << std::setw(16) << "F1-score" << "\n";
    os << std::string(62, '-') << "\n";
    os << std::fixed << std::setprecision(1);
    for (const auto& r : results) {
        std::ostringstream g, f;
        g << std::fixed << std::setprecision(1) << r.gmean_mean << " +- " << r.gmean_std;
        f << std::fixed << std::setprecision(1) << r.f1_mean << " +- " << r.f1_std;
        os << std::left << std::setw(14) << r.method << std::setw(16) << r.dataset << std::right
           << std::setw(16) << g.str() << std::setw(16) << f.str() << "\n";
    }
    return os.str();
}

/// Averaged confusion tables rounded for display, Table-style.
inline std::string format_confusion_table(const std::vector<ExperimentResult>& results) {
    std::ostringstream os;
    os << std::left << std::setw(14) << "method" << std::setw(16) << "dataset" << std::right
       << std::setw(10) << "T-" << std::setw(10) << "F+" << std::setw(10) << "F-" << std::setw(10)
       << "T+" << "\n";
    os << std::string(70, '-') << "\n";
    for (const auto& r : results) {
        const auto& c = r.averaged_confusion;
        os << std::left << std::setw(14) << r.method << std::setw(16) << r.dataset << std::right
           << std::setw(10) << round_count(c.t_minus) << std::setw(10) << round_count(c.f_plus)
           << std::setw(10) << round_count(c.f_minus) << std::setw(10) << round_count(c.t_plus)
           << "\n";
    }
    return os.str();
}

}  // namespace shiftsvm
