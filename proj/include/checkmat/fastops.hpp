#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "checkmat/factorization.hpp"
#include "checkmat/matrix.hpp"

namespace checkmat {

/// Low-rank matrix held as a sum of rank-1 factors, never densified unless
/// asked to.
struct StructuredMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<RankOneFactor> factors;

    static StructuredMatrix from_factors(std::size_t rows, std::size_t cols,
                                         std::vector<RankOneFactor> factors);

    std::size_t rank() const { return factors.size(); }

    /// Dense realization, sum of all factors.
    Matrix realize() const;
};

/// Exact operation counts (each scalar multiply or add is one flop).
struct FlopReport {
    std::uint64_t structured_flops = 0;
    std::uint64_t dense_flops = 0;
    double ratio = 0.0;
};

/// Closed-form counts. Structured matvec per factor: one dot product (2n-1),
/// one sigma multiply (1), one scale of the left vector (m); accumulation
/// adds m per factor after the first.
std::uint64_t dense_matvec_flops(std::size_t m, std::size_t n);
std::uint64_t structured_matvec_flops(std::size_t m, std::size_t n, std::size_t r);
std::uint64_t dense_matmul_flops(std::size_t m, std::size_t n, std::size_t k);
std::uint64_t structured_matmul_flops(std::size_t m, std::size_t n, std::size_t k,
                                      std::size_t r);

/// y = sum_i sigma_i * left_i * (right_i . x) without densifying; flops are
/// tallied while computing and reported against the dense equivalent.
std::pair<std::vector<double>, FlopReport> matvec_structured(const StructuredMatrix& s,
                                                             std::span<const double> x);

/// Y = sum_i sigma_i * left_i * (right_i^T X), same accounting per column.
std::pair<Matrix, FlopReport> matmul_structured(const StructuredMatrix& s, const Matrix& x);

/// One benchmarked size: exact flop counts plus median wall-clock times for
/// structured and dense matvec. Timings are informational only.
struct BenchRow {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t rank = 0;
    std::uint64_t structured_flops = 0;
    std::uint64_t dense_flops = 0;
    double ratio = 0.0;
    std::uint64_t median_ns_structured = 0;
    std::uint64_t median_ns_dense = 0;
};

/// Times structured vs dense matvec over `trials` runs per size. Rank 1 uses
/// the {1,-1} checkered factor, rank 2 the {1,0} pair; higher ranks append
/// deterministic seeded unit factors.
std::vector<BenchRow> bench(std::span<const std::pair<std::size_t, std::size_t>> sizes,
                            std::size_t rank, std::size_t trials);

/// Deterministic structured test matrix used by bench.
StructuredMatrix bench_structured_matrix(std::size_t rows, std::size_t cols,
                                         std::size_t rank);

} // namespace checkmat
