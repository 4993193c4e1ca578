#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "checkmat/matrix.hpp"
#include "checkmat/patterns.hpp"

namespace checkmat {

/// Result of Gaussian elimination with partial pivoting.
struct RankReport {
    std::size_t numerical_rank = 0;
    /// Pivot magnitudes, sorted descending; exactly numerical_rank entries,
    /// each strictly above tolerance_used.
    std::vector<double> pivot_magnitudes;
    double tolerance_used = 0.0;
    /// Row echelon form; rows below numerical_rank carry only sub-tolerance
    /// residue.
    Matrix echelon_form;
};

/// Default absolute pivot tolerance: 1e-10 * max(m,n) * max|entry|, floored
/// at a tiny positive value so the zero matrix still gets a valid tolerance.
double default_rank_tolerance(const Matrix& m);

/// Numerical rank by Gaussian elimination with partial pivoting (largest
/// pivot magnitude per column, smallest row index on ties). A pivot counts
/// iff its magnitude exceeds tol.
RankReport rank_gauss(const Matrix& m, double tol);
RankReport rank_gauss(const Matrix& m);

/// Exact rank of the checkered pattern: {1,-1} is always 1; {1,0} is 2 when
/// both dimensions are at least 2, else 1.
std::size_t analytic_checkered_rank(Alphabet alphabet, std::size_t rows, std::size_t cols);

/// Exact rank of alpha_blend(alpha, rows, cols) for rows, cols >= 2: 1 at the
/// roots of 1-(-1+2a)^2 = 0 (alpha in {0,1}), otherwise 2. Degenerate shapes
/// (a single row or column) fall back to elimination.
std::size_t alpha_rank(double alpha, std::size_t rows, std::size_t cols);

/// Roots of 1-(-1+2a)^2 = 0, solved via the expanded quadratic
/// -4a^2 + 4a = 0; returns them in ascending order, i.e. (0, 1).
std::pair<double, double> alpha_roots();

} // namespace checkmat
