#include "checkmat/rank.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace checkmat {

double default_rank_tolerance(const Matrix& m) {
    const double scale = static_cast<double>(std::max(m.rows(), m.cols()));
    const double tol = 1e-10 * scale * m.max_abs();
    // Keep the tolerance strictly positive for the all-zero matrix.
    return std::max(tol, 1e-300);
}

RankReport rank_gauss(const Matrix& m, double tol) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw ArgumentError("pivot tolerance must be positive and finite");
    }
    if (!m.all_finite()) {
        throw ArgumentError("matrix must be finite");
    }

    Matrix work = m;
    const std::size_t rows = work.rows();
    const std::size_t cols = work.cols();
    std::vector<double> pivots;
    std::size_t pivot_row = 0;

    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        // Partial pivoting: largest magnitude below the current row, ties
        // resolved toward the smallest row index.
        std::size_t best = pivot_row;
        double best_mag = std::fabs(work(pivot_row, col));
        for (std::size_t i = pivot_row + 1; i < rows; ++i) {
            const double mag = std::fabs(work(i, col));
            if (mag > best_mag) {
                best = i;
                best_mag = mag;
            }
        }
        if (!(best_mag > tol)) {
            continue;
        }
        if (best != pivot_row) {
            for (std::size_t j = 0; j < cols; ++j) {
                std::swap(work(pivot_row, j), work(best, j));
            }
        }
        for (std::size_t i = pivot_row + 1; i < rows; ++i) {
            const double factor = work(i, col) / work(pivot_row, col);
            if (factor == 0.0) {
                continue;
            }
            work(i, col) = 0.0;
            for (std::size_t j = col + 1; j < cols; ++j) {
                work(i, j) -= factor * work(pivot_row, j);
            }
        }
        pivots.push_back(best_mag);
        ++pivot_row;
    }

    std::sort(pivots.begin(), pivots.end(), std::greater<>());
    return RankReport{pivots.size(), std::move(pivots), tol, std::move(work)};
}

RankReport rank_gauss(const Matrix& m) {
    return rank_gauss(m, default_rank_tolerance(m));
}

std::size_t analytic_checkered_rank(Alphabet alphabet, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("dimensions must be at least 1");
    }
    if (alphabet.kind == AlphabetKind::PlusMinus) {
        return 1;
    }
    return (rows >= 2 && cols >= 2) ? 2 : 1;
}

std::size_t alpha_rank(double alpha, std::size_t rows, std::size_t cols) {
    if (!std::isfinite(alpha)) {
        throw ArgumentError("alpha must be finite");
    }
    if (rows < 2 || cols < 2) {
        // The dichotomy needs two independent parity rows and columns.
        return rank_gauss(alpha_blend(alpha, rows, cols)).numerical_rank;
    }
    const auto [r0, r1] = alpha_roots();
    return (alpha == r0 || alpha == r1) ? 1 : 2;
}

std::pair<double, double> alpha_roots() {
    // 1 - (-1+2a)^2 expands to -4a^2 + 4a + 0.
    const double a = -4.0;
    const double b = 4.0;
    const double c = 0.0;
    const double discriminant = b * b - 4.0 * a * c;
    if (!(discriminant > 0.0)) {
        throw ArgumentError("rank-1 blend equation must have two real roots");
    }
    const double sq = std::sqrt(discriminant);
    double r0 = (-b + sq) / (2.0 * a);
    double r1 = (-b - sq) / (2.0 * a);
    if (r0 > r1) {
        std::swap(r0, r1);
    }
    return {r0, r1};
}

} // namespace checkmat
