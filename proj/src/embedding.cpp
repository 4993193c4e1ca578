#include "checkmat/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "checkmat/rank.hpp"

namespace checkmat {

namespace {

constexpr double kBackgroundThreshold = 0.99;
constexpr double kPayloadThreshold = 0.2;
// The block plateau carries uniform magnitude (the payload component is a
// near-uniform rank-1 block), while cross-shaped leakage outside the block
// reaches 0.27 of the peak at 8x8. Half the peak separates the two regimes
// with comfortable margin on both sides.
constexpr double kBoxThreshold = 0.5;

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

/// Orthonormal basis of the analytic background directions; for {1,0} the
/// uniform direction is orthogonalized against the alternating one (they
/// are not orthogonal when the length is odd).
std::vector<std::vector<double>> background_basis(Alphabet alphabet, std::size_t length) {
    std::vector<std::vector<double>> basis;
    basis.push_back(alternating_unit(length));
    if (alphabet.kind == AlphabetKind::ZeroOne) {
        std::vector<double> second = uniform_unit(length);
        double proj = 0.0;
        for (std::size_t i = 0; i < length; ++i) {
            proj += second[i] * basis[0][i];
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < length; ++i) {
            second[i] -= proj * basis[0][i];
            norm += second[i] * second[i];
        }
        norm = std::sqrt(norm);
        if (norm > 1e-12) {
            for (double& v : second) {
                v /= norm;
            }
            basis.push_back(std::move(second));
        }
    }
    return basis;
}

double projection_norm(const std::vector<double>& vec,
                       const std::vector<std::vector<double>>& basis) {
    double sum = 0.0;
    for (const auto& b : basis) {
        double dot = 0.0;
        for (std::size_t i = 0; i < vec.size(); ++i) {
            dot += vec[i] * b[i];
        }
        sum += dot * dot;
    }
    return std::sqrt(sum);
}

} // namespace

double alphabet_mean(Alphabet alphabet) {
    return alphabet.kind == AlphabetKind::ZeroOne ? 0.5 : 0.0;
}

bool EmbedSpec::canonical_fill() const {
    return fill_value == alphabet_mean(alphabet);
}

Matrix embed_block(const EmbedSpec& spec) {
    if (spec.block_rows == 0 || spec.block_cols == 0) {
        throw GeometryError("block must have at least one row and one column");
    }
    if (spec.block_row + spec.block_rows > spec.rows ||
        spec.block_col + spec.block_cols > spec.cols) {
        throw GeometryError("block (" + std::to_string(spec.block_rows) + "x" +
                            std::to_string(spec.block_cols) + " at " +
                            std::to_string(spec.block_row) + "," +
                            std::to_string(spec.block_col) + ") does not fit in " +
                            std::to_string(spec.rows) + "x" + std::to_string(spec.cols));
    }
    Matrix result = gen_checkered(spec.rows, spec.cols, spec.alphabet);
    for (std::size_t i = 0; i < spec.block_rows; ++i) {
        for (std::size_t j = 0; j < spec.block_cols; ++j) {
            result(spec.block_row + i, spec.block_col + j) = spec.fill_value;
        }
    }
    return result;
}

std::size_t embedded_rank(Alphabet alphabet, std::size_t rows, std::size_t cols,
                          std::size_t block_rows, std::size_t block_cols) {
    if (rows < 2 || cols < 2) {
        throw DimensionError("host matrix must be at least 2x2");
    }
    if (block_rows == 0 || block_cols == 0) {
        throw GeometryError("block must have at least one row and one column");
    }
    if (block_rows >= rows || block_cols >= cols) {
        throw UnsupportedError("prediction requires a block strictly smaller than the host");
    }
    if (alphabet.kind == AlphabetKind::PlusMinus) {
        return 2;
    }
    // The mean-filled perturbation must stay independent of the two parity
    // directions for every admissible position: a one-row (or one-column)
    // block inside a host shorter than 4 can cover a whole parity class.
    const bool rows_ok = block_rows >= 2 || rows >= 4;
    const bool cols_ok = block_cols >= 2 || cols >= 4;
    if (!rows_ok || !cols_ok) {
        throw UnsupportedError("prediction is position-dependent for 1-wide blocks in hosts "
                               "smaller than 4; use rank_gauss on the embedded matrix");
    }
    return 3;
}

std::size_t embedded_rank(const EmbedSpec& spec) {
    if (!spec.canonical_fill()) {
        throw UnsupportedError("prediction covers only the canonical mean-valued fill (" +
                               std::to_string(alphabet_mean(spec.alphabet)) + ")");
    }
    return embedded_rank(spec.alphabet, spec.rows, spec.cols, spec.block_rows,
                         spec.block_cols);
}

RetrievalReport separate(const Matrix& embedded, Alphabet alphabet) {
    const std::size_t rows = embedded.rows();
    const std::size_t cols = embedded.cols();

    const SvdResult svd = svd_jacobi(embedded);
    const std::vector<RankOneFactor> comps = components(svd);

    const auto left_basis = background_basis(alphabet, rows);
    const auto right_basis = background_basis(alphabet, cols);

    RetrievalReport report;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const double left_proj = projection_norm(comps[k].left, left_basis);
        const double right_proj = projection_norm(comps[k].right, right_basis);
        if (left_proj >= kBackgroundThreshold && right_proj >= kBackgroundThreshold) {
            report.background_components.push_back(comps[k]);
        } else if (left_proj <= kPayloadThreshold && right_proj <= kPayloadThreshold) {
            report.payload_components.push_back(comps[k]);
        } else {
            throw ClassificationError(
                "component " + std::to_string(k) + " is ambiguous (projection norms " +
                    std::to_string(left_proj) + ", " + std::to_string(right_proj) +
                    " fall between the payload and background thresholds)",
                k);
        }
    }

    const std::size_t expected = analytic_checkered_rank(alphabet, rows, cols);
    if (report.background_components.size() != expected) {
        throw ClassificationError("expected " + std::to_string(expected) +
                                      " background components, classified " +
                                      std::to_string(report.background_components.size()),
                                  comps.size());
    }

    if (!report.payload_components.empty()) {
        Matrix payload(rows, cols);
        for (const auto& factor : report.payload_components) {
            payload = payload + factor.realize();
        }
        const double cutoff = kBoxThreshold * payload.max_abs();
        std::size_t r_lo = rows, r_hi = 0, c_lo = cols, c_hi = 0;
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (std::fabs(payload(i, j)) > cutoff) {
                    r_lo = std::min(r_lo, i);
                    r_hi = std::max(r_hi, i);
                    c_lo = std::min(c_lo, j);
                    c_hi = std::max(c_hi, j);
                }
            }
        }
        if (r_lo <= r_hi) {
            report.block = BlockBox{r_lo, c_lo, r_hi - r_lo + 1, c_hi - c_lo + 1};
            double sum = 0.0;
            for (std::size_t i = r_lo; i <= r_hi; ++i) {
                for (std::size_t j = c_lo; j <= c_hi; ++j) {
                    sum += embedded(i, j);
                }
            }
            report.recovered_fill_value =
                sum / static_cast<double>(report.block.rows * report.block.cols);
        }
    }

    Matrix total(rows, cols);
    for (const auto& factor : report.background_components) {
        total = total + factor.realize();
    }
    for (const auto& factor : report.payload_components) {
        total = total + factor.realize();
    }
    report.residual_norm = (embedded - total).frobenius_norm();
    return report;
}

Matrix reconstruct_background(const RetrievalReport& report) {
    if (report.background_components.empty()) {
        throw ArgumentError("report carries no background components");
    }
    const auto& first = report.background_components.front();
    Matrix result(first.left.size(), first.right.size());
    for (const auto& factor : report.background_components) {
        result = result + factor.realize();
    }
    return result;
}

} // namespace checkmat
