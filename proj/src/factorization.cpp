#include "checkmat/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "checkmat/rank.hpp"

namespace checkmat {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw DimensionError("dimensions must be at least 1");
    }
}

std::vector<double> alternating_unit(std::size_t length) {
    std::vector<double> v(length);
    const double scale = 1.0 / std::sqrt(static_cast<double>(length));
    for (std::size_t i = 0; i < length; ++i) {
        v[i] = (i % 2 == 0) ? scale : -scale;
    }
    return v;
}

std::vector<double> uniform_unit(std::size_t length) {
    return std::vector<double>(length, 1.0 / std::sqrt(static_cast<double>(length)));
}

double column_dot(const Matrix& m, std::size_t a, std::size_t b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        sum += m(i, a) * m(i, b);
    }
    return sum;
}

/// Flips the sign of column pair (u_col of u, v_col of v) so that u_col's
/// first component of largest magnitude is positive.
void normalize_column_sign(Matrix& u, std::size_t u_col, Matrix* v, std::size_t v_col) {
    std::size_t lead = 0;
    double lead_mag = 0.0;
    for (std::size_t i = 0; i < u.rows(); ++i) {
        const double mag = std::fabs(u(i, u_col));
        if (mag > lead_mag) {
            lead = i;
            lead_mag = mag;
        }
    }
    if (u(lead, u_col) >= 0.0) {
        return;
    }
    for (std::size_t i = 0; i < u.rows(); ++i) {
        u(i, u_col) = -u(i, u_col);
    }
    if (v != nullptr) {
        for (std::size_t i = 0; i < v->rows(); ++i) {
            (*v)(i, v_col) = -(*v)(i, v_col);
        }
    }
}

/// Fills columns [filled, m) of u with an orthonormal completion, running
/// Gram-Schmidt over canonical basis vectors in index order.
void complete_orthonormal(Matrix& u, std::size_t filled) {
    const std::size_t m = u.rows();
    std::size_t next = filled;
    for (std::size_t candidate = 0; candidate < m && next < m; ++candidate) {
        std::vector<double> col(m, 0.0);
        col[candidate] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < next; ++k) {
                double proj = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    proj += col[i] * u(i, k);
                }
                for (std::size_t i = 0; i < m; ++i) {
                    col[i] -= proj * u(i, k);
                }
            }
        }
        double norm = 0.0;
        for (double v : col) {
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            u(i, next) = col[i] / norm;
        }
        ++next;
    }
}

} // namespace

Matrix RankOneFactor::realize() const {
    Matrix result(left.size(), right.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = 0; j < right.size(); ++j) {
            result(i, j) = sigma * (left[i] * right[j]);
        }
    }
    return result;
}

Matrix SvdResult::reconstruct() const {
    const std::size_t m = rows();
    const std::size_t n = cols();
    Matrix result(m, n);
    for (std::size_t k = 0; k < singular_values.size(); ++k) {
        const double s = singular_values[k];
        if (s == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
            const double scaled = s * u(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                result(i, j) += scaled * v(j, k);
            }
        }
    }
    return result;
}

RankOneFactor analytic_factor_checkered(std::size_t rows, std::size_t cols) {
    check_dims(rows, cols);
    return RankOneFactor{std::sqrt(static_cast<double>(rows) * static_cast<double>(cols)),
                         alternating_unit(rows), alternating_unit(cols)};
}

RankOneFactor analytic_factor_ones(std::size_t rows, std::size_t cols) {
    check_dims(rows, cols);
    return RankOneFactor{std::sqrt(static_cast<double>(rows) * static_cast<double>(cols)),
                         uniform_unit(rows), uniform_unit(cols)};
}

std::pair<RankOneFactor, RankOneFactor> analytic_factor_zero_one(std::size_t rows,
                                                                 std::size_t cols) {
    RankOneFactor checkered = analytic_factor_checkered(rows, cols);
    RankOneFactor ones = analytic_factor_ones(rows, cols);
    checkered.sigma *= 0.5;
    ones.sigma *= 0.5;
    return {std::move(checkered), std::move(ones)};
}

SvdResult svd_jacobi(const Matrix& m, const SvdOptions& options) {
    if (!(options.tol > 0.0) || !std::isfinite(options.tol)) {
        throw ArgumentError("svd tolerance must be positive and finite");
    }
    if (options.max_sweeps == 0) {
        throw ArgumentError("max_sweeps must be at least 1");
    }
    if (!m.all_finite()) {
        throw ArgumentError("matrix must be finite");
    }

    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    Matrix work = m;
    Matrix v(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        v(j, j) = 1.0;
    }

    // Columns whose squared norm falls below this carry only rounding noise
    // left behind by earlier rotations; they are orthogonal for all
    // practical purposes and must not keep the sweep alive.
    const double fro = m.frobenius_norm();
    const double noise_floor =
        fro * fro * std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon();

    // One-sided Jacobi: rotate column pairs until every pair is orthogonal
    // relative to its column norms.
    bool converged = false;
    double worst_residual = 0.0;
    for (std::size_t sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        converged = true;
        worst_residual = 0.0;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                const double app = column_dot(work, p, p);
                const double aqq = column_dot(work, q, q);
                const double apq = column_dot(work, p, q);
                if (app <= noise_floor || aqq <= noise_floor) {
                    continue;
                }
                const double bound = std::sqrt(app * aqq);
                const double residual = std::fabs(apq) / bound;
                if (residual <= options.tol) {
                    continue;
                }
                worst_residual = std::max(worst_residual, residual);
                converged = false;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t i = 0; i < rows; ++i) {
                    const double wp = work(i, p);
                    const double wq = work(i, q);
                    work(i, p) = c * wp - s * wq;
                    work(i, q) = s * wp + c * wq;
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    const double vp = v(i, p);
                    const double vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged) {
        throw ConvergenceError("jacobi svd did not converge after " +
                                   std::to_string(options.max_sweeps) +
                                   " sweeps (residual " + std::to_string(worst_residual) + ")",
                               worst_residual);
    }

    std::vector<double> norms(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        norms[j] = std::sqrt(column_dot(work, j, j));
    }
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&norms](std::size_t a, std::size_t b) { return norms[a] > norms[b]; });

    SvdResult result(rows, cols);
    const std::size_t count = std::min(rows, cols);
    result.singular_values.resize(count);

    Matrix v_sorted(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < cols; ++i) {
            v_sorted(i, j) = v(i, order[j]);
        }
    }
    result.v = std::move(v_sorted);

    // Singular vectors with usable norms come straight from the rotated
    // columns; the rest of U is filled by orthonormal completion.
    const double scale = norms.empty() ? 0.0 : norms[order[0]];
    const double usable = scale * 1e-13;
    std::size_t filled = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double s = norms[order[k]];
        result.singular_values[k] = s;
        if (s > usable && s > 0.0) {
            for (std::size_t i = 0; i < rows; ++i) {
                result.u(i, k) = work(i, order[k]) / s;
            }
            filled = k + 1;
        }
    }
    complete_orthonormal(result.u, filled);

    for (std::size_t k = 0; k < count; ++k) {
        normalize_column_sign(result.u, k, &result.v, k);
    }
    for (std::size_t k = count; k < rows; ++k) {
        normalize_column_sign(result.u, k, nullptr, 0);
    }
    for (std::size_t k = count; k < cols; ++k) {
        normalize_column_sign(result.v, k, nullptr, 0);
    }
    return result;
}

SvdResult svd_jacobi(const Matrix& m, double tol, std::size_t max_sweeps) {
    return svd_jacobi(m, SvdOptions{tol, max_sweeps});
}

Matrix truncate(const SvdResult& svd, std::size_t k) {
    const std::size_t count = svd.singular_values.size();
    if (k > count) {
        throw ArgumentError("truncation rank " + std::to_string(k) + " exceeds min(m,n) = " +
                            std::to_string(count));
    }
    Matrix result(svd.rows(), svd.cols());
    for (std::size_t t = 0; t < k; ++t) {
        const double s = svd.singular_values[t];
        for (std::size_t i = 0; i < svd.rows(); ++i) {
            const double scaled = s * svd.u(i, t);
            for (std::size_t j = 0; j < svd.cols(); ++j) {
                result(i, j) += scaled * svd.v(j, t);
            }
        }
    }
    return result;
}

std::vector<RankOneFactor> components(const SvdResult& svd) {
    // Same tolerance policy as the rank module, with the largest singular
    // value standing in for the entry scale.
    const double s_max = svd.singular_values.empty() ? 0.0 : svd.singular_values.front();
    const double cutoff =
        1e-10 * static_cast<double>(std::max(svd.rows(), svd.cols())) * s_max;

    std::vector<RankOneFactor> result;
    for (std::size_t k = 0; k < svd.singular_values.size(); ++k) {
        const double s = svd.singular_values[k];
        if (!(s > cutoff) || s == 0.0) {
            continue;
        }
        RankOneFactor factor;
        factor.sigma = s;
        factor.left.resize(svd.rows());
        factor.right.resize(svd.cols());
        for (std::size_t i = 0; i < svd.rows(); ++i) {
            factor.left[i] = svd.u(i, k);
        }
        for (std::size_t j = 0; j < svd.cols(); ++j) {
            factor.right[j] = svd.v(j, k);
        }
        result.push_back(std::move(factor));
    }
    return result;
}

} // namespace checkmat
