#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "checkmat/errors.hpp"

namespace checkmat {

/// Dense real m-by-n matrix with row-major storage. Immutable in spirit:
/// library operations take matrices by const reference and return fresh
/// values, so instances can be shared freely across threads.
class Matrix {
  public:
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    /// Builds from row literals; rows must all have the same length.
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double& at(std::size_t i, std::size_t j);
    double at(std::size_t i, std::size_t j) const;

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    /// Largest entry magnitude; 0 for the zero matrix.
    double max_abs() const;
    double frobenius_norm() const;
    /// True when every entry is finite (no NaN or infinity).
    bool all_finite() const;

    Matrix transposed() const;

    friend bool operator==(const Matrix& a, const Matrix& b);

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double scalar, const Matrix& m);

/// Largest |a(i,j) - b(i,j)|; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

} // namespace checkmat
