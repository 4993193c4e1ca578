#include "checkmat/matrix.hpp"

#include <cmath>
#include <string>

namespace checkmat {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("matrix dimensions must be at least 1x1, got " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
}

void check_same_shape(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) {
        throw DimensionError("shape mismatch: " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                             "x" + std::to_string(b.cols()));
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_() {
    check_dims(rows, cols);
    data_.assign(rows * cols, fill);
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.begin()->size();
    Matrix result(m, n);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n) {
            throw DimensionError("ragged row literal at row " + std::to_string(i));
        }
        std::size_t j = 0;
        for (double v : row) {
            result(i, j++) = v;
        }
        ++i;
    }
    return result;
}

double& Matrix::at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) {
        throw DimensionError("index (" + std::to_string(i) + "," + std::to_string(j) +
                             ") out of range for " + std::to_string(rows_) + "x" +
                             std::to_string(cols_));
    }
    return data_[i * cols_ + j];
}

double Matrix::at(std::size_t i, std::size_t j) const {
    return const_cast<Matrix*>(this)->at(i, j);
}

double Matrix::max_abs() const {
    double result = 0.0;
    for (double v : data_) {
        result = std::max(result, std::fabs(v));
    }
    return result;
}

double Matrix::frobenius_norm() const {
    double sum = 0.0;
    for (double v : data_) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

bool Matrix::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

Matrix Matrix::transposed() const {
    Matrix result(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            result(j, i) = (*this)(i, j);
        }
    }
    return result;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix result = a;
    for (std::size_t i = 0; i < result.size(); ++i) {
        result.data()[i] += b.data()[i];
    }
    return result;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix result = a;
    for (std::size_t i = 0; i < result.size(); ++i) {
        result.data()[i] -= b.data()[i];
    }
    return result;
}

Matrix operator*(double scalar, const Matrix& m) {
    Matrix result = m;
    for (double& v : result.data()) {
        v *= scalar;
    }
    return result;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    double result = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        result = std::max(result, std::fabs(a.data()[i] - b.data()[i]));
    }
    return result;
}

} // namespace checkmat
