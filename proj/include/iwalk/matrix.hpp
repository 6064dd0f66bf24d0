#pragma once

#include <cstddef>
#include <vector>

namespace iwalk {

// Dense square matrix, row-major. State spaces here are tiny (s <= ~16), so
// a flat vector is all we need.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::vector<std::vector<double>> to_rows() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

inline Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size() && j < rows.size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

inline std::vector<std::vector<double>> Matrix::to_rows() const {
    std::vector<std::vector<double>> rows(n_, std::vector<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            rows[i][j] = (*this)(i, j);
    return rows;
}

} // namespace iwalk
