#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "checkmat/matrix.hpp"

namespace checkmat {

/// One term sigma * left * right^T with unit-norm left (length m) and
/// right (length n) and sigma >= 0.
struct RankOneFactor {
    double sigma = 0.0;
    std::vector<double> left;
    std::vector<double> right;

    /// Dense realization sigma * left * right^T.
    Matrix realize() const;
};

/// Full singular value decomposition M = U * diag(s) * V^T with U (m x m)
/// and V (n x n) orthogonal and s non-increasing of length min(m,n).
struct SvdResult {
    Matrix u;
    std::vector<double> singular_values;
    Matrix v;

    SvdResult(std::size_t rows, std::size_t cols)
        : u(rows, rows), singular_values(), v(cols, cols) {}

    std::size_t rows() const { return u.rows(); }
    std::size_t cols() const { return v.rows(); }

    /// U * diag(s) * V^T.
    Matrix reconstruct() const;
};

/// Closed-form rank-1 factorization of the {1,-1} checkered pattern:
/// sigma = sqrt(m*n), left and right alternate +1,-1 scaled to unit norm.
RankOneFactor analytic_factor_checkered(std::size_t rows, std::size_t cols);

/// Closed-form rank-1 factorization of the all-ones matrix: tau = sqrt(m*n),
/// uniform unit vectors.
RankOneFactor analytic_factor_ones(std::size_t rows, std::size_t cols);

/// Rank-2 split of the {1,0} pattern as half the sum of the two factors
/// above. Not an SVD in general: the left vectors are orthogonal only for
/// even m, the right ones only for even n.
std::pair<RankOneFactor, RankOneFactor> analytic_factor_zero_one(std::size_t rows,
                                                                 std::size_t cols);

struct SvdOptions {
    double tol = 1e-12;
    std::size_t max_sweeps = 30;
};

/// One-sided Jacobi SVD: orthogonalizes column pairs of a working copy until
/// every off-diagonal Gram entry is negligible relative to the column norms,
/// then reads singular values off the column norms and completes U to a full
/// orthogonal basis (Gram-Schmidt against canonical vectors in index order).
/// Each (u_i, v_i) pair is sign-normalized so u_i's largest-magnitude leading
/// component is positive. Throws ConvergenceError after max_sweeps.
SvdResult svd_jacobi(const Matrix& m, const SvdOptions& options = {});
SvdResult svd_jacobi(const Matrix& m, double tol, std::size_t max_sweeps);

/// Sum of the leading k rank-1 terms of the decomposition.
Matrix truncate(const SvdResult& svd, std::size_t k);

/// The decomposition's rank-1 terms with singular value above the default
/// rank tolerance policy (1e-10 * max(m,n) * s_max), ordered by descending
/// singular value.
std::vector<RankOneFactor> components(const SvdResult& svd);

} // namespace checkmat
