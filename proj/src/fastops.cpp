#include "checkmat/fastops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "checkmat/patterns.hpp"

namespace checkmat {

namespace {

void check_factor_dims(std::size_t rows, std::size_t cols, const RankOneFactor& factor,
                       std::size_t index) {
    if (factor.left.size() != rows || factor.right.size() != cols) {
        throw DimensionError("factor " + std::to_string(index) + " has shape " +
                             std::to_string(factor.left.size()) + "x" +
                             std::to_string(factor.right.size()) + ", expected " +
                             std::to_string(rows) + "x" + std::to_string(cols));
    }
    bool finite = std::isfinite(factor.sigma);
    for (double v : factor.left) {
        finite = finite && std::isfinite(v);
    }
    for (double v : factor.right) {
        finite = finite && std::isfinite(v);
    }
    if (!finite) {
        throw ArgumentError("factor " + std::to_string(index) + " carries non-finite values");
    }
}

std::vector<double> seeded_unit_vector(std::size_t length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(length);
    double norm = 0.0;
    while (norm == 0.0) {
        for (double& x : v) {
            x = dist(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
    }
    for (double& x : v) {
        x /= norm;
    }
    return v;
}

std::vector<double> dense_matvec(const Matrix& m, std::span<const double> x) {
    std::vector<double> y(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            sum += m(i, j) * x[j];
        }
        y[i] = sum;
    }
    return y;
}

std::uint64_t median_ns(std::vector<std::uint64_t> samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

} // namespace

StructuredMatrix StructuredMatrix::from_factors(std::size_t rows, std::size_t cols,
                                                std::vector<RankOneFactor> factors) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("dimensions must be at least 1");
    }
    if (factors.size() > std::min(rows, cols)) {
        throw DimensionError("structural rank " + std::to_string(factors.size()) +
                             " exceeds min(m,n) = " + std::to_string(std::min(rows, cols)));
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
        check_factor_dims(rows, cols, factors[k], k);
    }
    return StructuredMatrix{rows, cols, std::move(factors)};
}

Matrix StructuredMatrix::realize() const {
    Matrix result(rows, cols);
    for (const auto& factor : factors) {
        result = result + factor.realize();
    }
    return result;
}

std::uint64_t dense_matvec_flops(std::size_t m, std::size_t n) {
    return static_cast<std::uint64_t>(2) * m * n - m;
}

std::uint64_t structured_matvec_flops(std::size_t m, std::size_t n, std::size_t r) {
    if (r == 0) {
        return 0;
    }
    // Per factor: dot product (2n-1), sigma multiply (1), scale (m);
    // accumulation contributes m per factor beyond the first.
    return static_cast<std::uint64_t>(r) * (2 * n - 1) + r + r * m + m * (r - 1);
}

std::uint64_t dense_matmul_flops(std::size_t m, std::size_t n, std::size_t k) {
    return static_cast<std::uint64_t>(k) * dense_matvec_flops(m, n);
}

std::uint64_t structured_matmul_flops(std::size_t m, std::size_t n, std::size_t k,
                                      std::size_t r) {
    return static_cast<std::uint64_t>(k) * structured_matvec_flops(m, n, r);
}

std::pair<std::vector<double>, FlopReport> matvec_structured(const StructuredMatrix& s,
                                                             std::span<const double> x) {
    if (x.size() != s.cols) {
        throw DimensionError("vector length " + std::to_string(x.size()) +
                             " does not match column count " + std::to_string(s.cols));
    }

    std::vector<double> y(s.rows, 0.0);
    std::uint64_t flops = 0;
    for (std::size_t k = 0; k < s.factors.size(); ++k) {
        const auto& factor = s.factors[k];
        double dot = 0.0;
        for (std::size_t j = 0; j < s.cols; ++j) {
            dot += factor.right[j] * x[j];
        }
        flops += 2 * s.cols - 1;
        const double scaled = factor.sigma * dot;
        flops += 1;
        for (std::size_t i = 0; i < s.rows; ++i) {
            const double term = scaled * factor.left[i];
            if (k == 0) {
                y[i] = term;
            } else {
                y[i] += term;
            }
        }
        flops += s.rows;
        if (k > 0) {
            flops += s.rows;
        }
    }

    FlopReport report;
    report.structured_flops = flops;
    report.dense_flops = dense_matvec_flops(s.rows, s.cols);
    report.ratio = static_cast<double>(report.structured_flops) /
                   static_cast<double>(report.dense_flops);
    return {std::move(y), report};
}

std::pair<Matrix, FlopReport> matmul_structured(const StructuredMatrix& s, const Matrix& x) {
    if (x.rows() != s.cols) {
        throw DimensionError("inner dimensions mismatch: " + std::to_string(s.cols) +
                             " vs " + std::to_string(x.rows()));
    }

    const std::size_t k_cols = x.cols();
    Matrix y(s.rows, k_cols);
    std::uint64_t flops = 0;
    for (std::size_t k = 0; k < s.factors.size(); ++k) {
        const auto& factor = s.factors[k];
        std::vector<double> row(k_cols, 0.0);
        for (std::size_t c = 0; c < k_cols; ++c) {
            double dot = 0.0;
            for (std::size_t j = 0; j < s.cols; ++j) {
                dot += factor.right[j] * x(j, c);
            }
            row[c] = factor.sigma * dot;
        }
        flops += k_cols * (2 * s.cols - 1) + k_cols;
        for (std::size_t i = 0; i < s.rows; ++i) {
            const double li = factor.left[i];
            for (std::size_t c = 0; c < k_cols; ++c) {
                const double term = li * row[c];
                if (k == 0) {
                    y(i, c) = term;
                } else {
                    y(i, c) += term;
                }
            }
        }
        flops += s.rows * k_cols;
        if (k > 0) {
            flops += s.rows * k_cols;
        }
    }

    FlopReport report;
    report.structured_flops = flops;
    report.dense_flops = dense_matmul_flops(s.rows, s.cols, k_cols);
    report.ratio = static_cast<double>(report.structured_flops) /
                   static_cast<double>(report.dense_flops);
    return {std::move(y), report};
}

StructuredMatrix bench_structured_matrix(std::size_t rows, std::size_t cols,
                                         std::size_t rank) {
    if (rank == 0 || rank > std::min(rows, cols)) {
        throw ArgumentError("rank must lie in [1, min(m,n)]");
    }
    std::vector<RankOneFactor> factors;
    if (rank == 1) {
        factors.push_back(analytic_factor_checkered(rows, cols));
    } else {
        auto [checkered, ones] = analytic_factor_zero_one(rows, cols);
        factors.push_back(std::move(checkered));
        factors.push_back(std::move(ones));
        const double scale = std::sqrt(static_cast<double>(rows) * cols);
        for (std::size_t k = 2; k < rank; ++k) {
            RankOneFactor extra;
            extra.sigma = scale / static_cast<double>(k + 1);
            extra.left = seeded_unit_vector(rows, 0x5eed0000 + 2 * k);
            extra.right = seeded_unit_vector(cols, 0x5eed0001 + 2 * k);
            factors.push_back(std::move(extra));
        }
    }
    return StructuredMatrix::from_factors(rows, cols, std::move(factors));
}

std::vector<BenchRow> bench(std::span<const std::pair<std::size_t, std::size_t>> sizes,
                            std::size_t rank, std::size_t trials) {
    if (trials == 0) {
        throw ArgumentError("trials must be at least 1");
    }

    std::vector<BenchRow> table;
    table.reserve(sizes.size());
    for (const auto& [rows, cols] : sizes) {
        const StructuredMatrix s = bench_structured_matrix(rows, cols, rank);
        const Matrix dense = s.realize();
        const std::vector<double> x = seeded_unit_vector(cols, 0xbe7c4 + cols);

        std::vector<std::uint64_t> structured_ns;
        std::vector<std::uint64_t> dense_ns;
        structured_ns.reserve(trials);
        dense_ns.reserve(trials);
        FlopReport report;
        for (std::size_t t = 0; t < trials; ++t) {
            auto start = std::chrono::steady_clock::now();
            auto [y, rep] = matvec_structured(s, x);
            auto mid = std::chrono::steady_clock::now();
            std::vector<double> y_dense = dense_matvec(dense, x);
            auto stop = std::chrono::steady_clock::now();
            structured_ns.push_back(static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(mid - start).count()));
            dense_ns.push_back(static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::nanoseconds>(stop - mid).count()));
            report = rep;
        }

        BenchRow row;
        row.rows = rows;
        row.cols = cols;
        row.rank = rank;
        row.structured_flops = report.structured_flops;
        row.dense_flops = report.dense_flops;
        row.ratio = report.ratio;
        row.median_ns_structured = median_ns(std::move(structured_ns));
        row.median_ns_dense = median_ns(std::move(dense_ns));
        table.push_back(row);
    }
    return table;
}

} // namespace checkmat
