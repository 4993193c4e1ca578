#include "checkmat/patterns.hpp"

#include <cmath>
#include <string>

namespace checkmat {

namespace {

bool high_at(std::size_t i, std::size_t j, Phase phase) {
    const bool even = ((i + j) % 2) == 0;
    return phase == Phase::HighFirst ? even : !even;
}

} // namespace

Matrix gen_checkered(std::size_t rows, std::size_t cols, Alphabet alphabet) {
    Matrix result(rows, cols);
    const double high = alphabet.high_symbol();
    const double low = alphabet.low_symbol();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            result(i, j) = high_at(i, j, alphabet.phase) ? high : low;
        }
    }
    return result;
}

Matrix gen_ones(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, 1.0);
}

Matrix affine_to_zero_one(const Matrix& plus_minus_matrix) {
    Matrix result(plus_minus_matrix.rows(), plus_minus_matrix.cols());
    for (std::size_t i = 0; i < plus_minus_matrix.rows(); ++i) {
        for (std::size_t j = 0; j < plus_minus_matrix.cols(); ++j) {
            const double v = plus_minus_matrix(i, j);
            if (v != 1.0 && v != -1.0) {
                throw AlphabetError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") = " + std::to_string(v) + " is not in {1,-1}");
            }
            result(i, j) = 0.5 * (v + 1.0);
        }
    }
    return result;
}

Matrix affine_to_plus_minus(const Matrix& zero_one_matrix) {
    Matrix result(zero_one_matrix.rows(), zero_one_matrix.cols());
    for (std::size_t i = 0; i < zero_one_matrix.rows(); ++i) {
        for (std::size_t j = 0; j < zero_one_matrix.cols(); ++j) {
            const double v = zero_one_matrix(i, j);
            if (v != 1.0 && v != 0.0) {
                throw AlphabetError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") = " + std::to_string(v) + " is not in {1,0}");
            }
            result(i, j) = 2.0 * v - 1.0;
        }
    }
    return result;
}

Matrix alpha_blend(double alpha, std::size_t rows, std::size_t cols) {
    if (!std::isfinite(alpha)) {
        throw ArgumentError("alpha must be finite");
    }
    Matrix result(rows, cols);
    const double odd_value = -1.0 + 2.0 * alpha;
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            result(i, j) = ((i + j) % 2 == 0) ? 1.0 : odd_value;
        }
    }
    return result;
}

} // namespace checkmat
