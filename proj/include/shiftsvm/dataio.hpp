#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftsvm/matrix.hpp"

namespace shiftsvm {

enum class MissingPolicy { drop_row, drop_column };

/// How to turn one delimited text file into a binary classification task.
struct DatasetSpec {
    std::string name;
    std::string path;
    int label_column = -1;            ///< 0-based, counted on the raw file columns
    std::string minority_label;       ///< raw value mapped to -1
    MissingPolicy missing_policy = MissingPolicy::drop_row;
    std::vector<int> exclude_columns; ///< 0-based raw column indices dropped up front
    /// Expected (samples, features, n_minus, n_plus); load fails on mismatch.
    std::optional<std::array<long, 4>> expect;
};

/// Canonical in-memory task: features row-major, labels in {-1,+1} with the
/// minority class on -1 and n_minus <= n_plus. Immutable after loading.
struct Dataset {
    std::string name;
    RowMatrix features;
    std::vector<int> labels;
    int n_minus = 0;
    int n_plus = 0;

    std::size_t size() const { return labels.size(); }
    std::size_t dim() const { return features.cols(); }
};

struct Summary {
    std::string name;
    long samples = 0;
    long features = 0;
    long n_minus = 0;
    long n_plus = 0;
    long minority_percent = 0;  ///< rounded to integer percent
};

/// Map two raw label values onto {-1,+1}: the declared minority value
/// becomes -1, the other +1. Exactly two distinct values must be present.
inline std::vector<int> relabel_minority(std::span<const std::string> raw,
                                         const std::string& minority_value) {
    std::vector<std::string> distinct;
    for (const auto& v : raw)
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
    if (distinct.size() != 2)
        throw std::invalid_argument("relabel_minority: expected exactly 2 classes, found " +
                                    std::to_string(distinct.size()));
    if (std::find(distinct.begin(), distinct.end(), minority_value) == distinct.end())
        throw std::invalid_argument("relabel_minority: declared minority label '" + minority_value +
                                    "' not present");
    std::vector<int> labels(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) labels[i] = (raw[i] == minority_value) ? -1 : 1;
    return labels;
}

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline std::vector<std::string> split_fields(const std::string& line, bool comma) {
    std::vector<std::string> out;
    if (comma) {
        std::string cur;
        for (char ch : line) {
            if (ch == ',') {
                out.push_back(strip(cur));
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        out.push_back(strip(cur));
    } else {
        std::istringstream is(line);
        std::string tok;
        while (is >> tok) out.push_back(tok);
    }
    return out;
}

inline bool is_missing(const std::string& field) { return field.empty() || field == "?"; }

inline double parse_number(const std::string& field, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw std::runtime_error("unparseable numeric field '" + field + "' at row " +
                                 std::to_string(row + 1) + ", column " + std::to_string(col));
    return value;
}

}  // namespace detail

inline Dataset load_dataset(const DatasetSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) throw std::runtime_error("load_dataset: cannot open '" + spec.path + "'");
    if (spec.label_column < 0) throw std::invalid_argument("load_dataset: label column not set");

    // Tokenize; delimiter auto-detected from the first data line.
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool comma = false, delimiter_known = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = detail::strip(line);
        if (t.empty()) continue;
        if (!delimiter_known) {
            comma = t.find(',') != std::string::npos;
            delimiter_known = true;
        }
        auto fields = detail::split_fields(t, comma);
        if (!rows.empty() && fields.size() != rows.front().size())
            throw std::runtime_error("load_dataset: malformed row at line " +
                                     std::to_string(line_no) + ": expected " +
                                     std::to_string(rows.front().size()) + " fields, got " +
                                     std::to_string(fields.size()));
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) throw std::runtime_error("load_dataset: '" + spec.path + "' has no data rows");

    const std::size_t raw_cols = rows.front().size();
    if (static_cast<std::size_t>(spec.label_column) >= raw_cols)
        throw std::invalid_argument("load_dataset: label column " +
                                    std::to_string(spec.label_column) + " out of range (" +
                                    std::to_string(raw_cols) + " columns)");

    std::vector<char> drop_col(raw_cols, 0);
    for (int c : spec.exclude_columns) {
        if (c < 0 || static_cast<std::size_t>(c) >= raw_cols || c == spec.label_column)
            throw std::invalid_argument("load_dataset: bad excluded column " + std::to_string(c));
        drop_col[static_cast<std::size_t>(c)] = 1;
    }

    // Missing-value policy. The label column can never be dropped; a missing
    // label is only tolerable under drop_row.
    std::vector<char> keep_row(rows.size(), 1);
    if (spec.missing_policy == MissingPolicy::drop_row) {
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < raw_cols; ++c)
                if (!drop_col[c] && detail::is_missing(rows[r][c])) {
                    keep_row[r] = 0;
                    break;
                }
    } else {
        for (std::size_t c = 0; c < raw_cols; ++c) {
            if (drop_col[c]) continue;
            bool any_missing = false;
            for (const auto& r : rows)
                if (detail::is_missing(r[c])) {
                    any_missing = true;
                    break;
                }
            if (any_missing) {
                if (static_cast<int>(c) == spec.label_column)
                    throw std::runtime_error("load_dataset: label column contains missing values");
                drop_col[c] = 1;
            }
        }
    }

    std::vector<std::string> raw_labels;
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (keep_row[r]) raw_labels.push_back(rows[r][static_cast<std::size_t>(spec.label_column)]);
    if (raw_labels.empty())
        throw std::runtime_error("load_dataset: no rows left after missing-value policy");

    std::vector<int> labels = relabel_minority(raw_labels, spec.minority_label);

    std::vector<std::size_t> feature_cols;
    for (std::size_t c = 0; c < raw_cols; ++c)
        if (!drop_col[c] && static_cast<int>(c) != spec.label_column) feature_cols.push_back(c);
    if (feature_cols.empty()) throw std::runtime_error("load_dataset: no feature columns left");

    Dataset ds;
    ds.name = spec.name.empty() ? std::filesystem::path(spec.path).stem().string() : spec.name;
    ds.features = RowMatrix(labels.size(), feature_cols.size());
    std::size_t out_r = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!keep_row[r]) continue;
        for (std::size_t j = 0; j < feature_cols.size(); ++j)
            ds.features(out_r, j) = detail::parse_number(rows[r][feature_cols[j]], r, feature_cols[j]);
        ++out_r;
    }
    ds.labels = std::move(labels);
    for (int l : ds.labels) (l == -1 ? ds.n_minus : ds.n_plus) += 1;

    if (ds.n_minus == 0 || ds.n_plus == 0)
        throw std::runtime_error("load_dataset: a class is empty after filtering (n_minus=" +
                                 std::to_string(ds.n_minus) + ", n_plus=" +
                                 std::to_string(ds.n_plus) + ")");
    if (ds.n_minus > ds.n_plus)
        throw std::runtime_error("load_dataset: declared minority class '" + spec.minority_label +
                                 "' is the larger class (" + std::to_string(ds.n_minus) + " > " +
                                 std::to_string(ds.n_plus) + ")");
    if (spec.expect) {
        const auto& e = *spec.expect;
        if (static_cast<long>(ds.size()) != e[0] || static_cast<long>(ds.dim()) != e[1] ||
            ds.n_minus != e[2] || ds.n_plus != e[3])
            throw std::runtime_error(
                "load_dataset: '" + ds.name + "' does not match its registry entry: got (" +
                std::to_string(ds.size()) + ", " + std::to_string(ds.dim()) + ", " +
                std::to_string(ds.n_minus) + ":" + std::to_string(ds.n_plus) + "), expected (" +
                std::to_string(e[0]) + ", " + std::to_string(e[1]) + ", " + std::to_string(e[2]) +
                ":" + std::to_string(e[3]) + ")");
    }
    return ds;
}

inline Summary dataset_summary(const Dataset& ds) {
    Summary s;
    s.name = ds.name;
    s.samples = static_cast<long>(ds.size());
    s.features = static_cast<long>(ds.dim());
    s.n_minus = ds.n_minus;
    s.n_plus = ds.n_plus;
    s.minority_percent =
        std::llround(100.0 * static_cast<double>(ds.n_minus) / static_cast<double>(ds.size()));
    return s;
}

/// Parse the `[name]` / `key = value` registry format. Relative file paths
/// resolve against the registry file's own directory.
inline std::map<std::string, DatasetSpec> load_registry(const std::string& registry_path) {
    std::ifstream in(registry_path);
    if (!in) throw std::runtime_error("load_registry: cannot open '" + registry_path + "'");
    const std::filesystem::path base = std::filesystem::path(registry_path).parent_path();

    std::map<std::string, DatasetSpec> out;
    DatasetSpec* current = nullptr;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::strip(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            const std::string name = detail::strip(t.substr(1, t.size() - 2));
            if (name.empty()) throw std::runtime_error("load_registry: empty section name");
            current = &out[name];
            current->name = name;
            continue;
        }
        const auto eq = t.find('=');
        if (!current || eq == std::string::npos)
            throw std::runtime_error("load_registry: bad line " + std::to_string(line_no) + ": " + t);
        const std::string key = detail::strip(t.substr(0, eq));
        const std::string value = detail::strip(t.substr(eq + 1));
        if (key == "file") {
            current->path = (base / value).string();
        } else if (key == "label_column") {
            current->label_column = std::stoi(value);
        } else if (key == "minority_label") {
            current->minority_label = value;
        } else if (key == "missing_policy") {
            if (value == "drop-row")
                current->missing_policy = MissingPolicy::drop_row;
            else if (value == "drop-column")
                current->missing_policy = MissingPolicy::drop_column;
            else
                throw std::runtime_error("load_registry: unknown missing_policy '" + value + "'");
        } else if (key == "exclude_columns") {
            for (const auto& tok : detail::split_fields(value, true))
                if (!tok.empty()) current->exclude_columns.push_back(std::stoi(tok));
        } else if (key == "expect") {
            const auto nums = detail::split_fields(value, false);
            if (nums.size() != 4)
                throw std::runtime_error("load_registry: expect wants 4 numbers, got '" + value + "'");
            std::array<long, 4> e{};
            for (std::size_t i = 0; i < 4; ++i) e[i] = std::stol(nums[i]);
            current->expect = e;
        } else {
            throw std::runtime_error("load_registry: unknown key '" + key + "' at line " +
                                     std::to_string(line_no));
        }
    }
    return out;
}

}  // namespace shiftsvm
