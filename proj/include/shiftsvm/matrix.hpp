#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace shiftsvm {

/// Dense row-major matrix of doubles. Rows are samples, columns features.
class RowMatrix {
public:
    RowMatrix() = default;
    RowMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    void append_row(std::span<const double> values) {
        if (cols_ == 0 && rows_ == 0) cols_ = values.size();
        if (values.size() != cols_)
            throw std::invalid_argument("append_row: expected " + std::to_string(cols_) +
                                        " values, got " + std::to_string(values.size()));
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    /// New matrix holding the selected rows, in the given order.
    RowMatrix select_rows(std::span<const int> indices) const {
        RowMatrix out(indices.size(), cols_);
        for (std::size_t i = 0; i < indices.size(); ++i) {
            auto src = row(static_cast<std::size_t>(indices[i]));
            std::copy(src.begin(), src.end(), out.row(i).begin());
        }
        return out;
    }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace shiftsvm
