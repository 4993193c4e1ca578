#pragma once

#include <cstddef>
#include <vector>

#include "checkmat/factorization.hpp"
#include "checkmat/matrix.hpp"
#include "checkmat/patterns.hpp"

namespace checkmat {

/// Mean of the alphabet's two symbols: 0.5 for {1,0}, 0 for {1,-1}. The
/// canonical fill value for embedding.
double alphabet_mean(Alphabet alphabet);

/// Placement of a uniform block inside a checkered background.
struct EmbedSpec {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Alphabet alphabet;
    std::size_t block_row = 0;
    std::size_t block_col = 0;
    std::size_t block_rows = 0;
    std::size_t block_cols = 0;
    double fill_value = 0.0;

    /// True when fill_value is exactly the alphabet mean.
    bool canonical_fill() const;
};

/// Rectangular block location reported by retrieval; dims are 0 when no
/// payload was found.
struct BlockBox {
    std::size_t row = 0;
    std::size_t col = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;

    bool empty() const { return rows == 0 || cols == 0; }
};

/// SVD components split into checkered background and embedded payload,
/// plus the recovered block geometry.
struct RetrievalReport {
    std::vector<RankOneFactor> background_components;
    std::vector<RankOneFactor> payload_components;
    BlockBox block;
    double recovered_fill_value = 0.0;
    /// Frobenius norm of input minus the sum of all components.
    double residual_norm = 0.0;
};

/// Generates the checkered background and overwrites the block region with
/// fill_value.
Matrix embed_block(const EmbedSpec& spec);

/// Predicted numerical rank of a canonically filled embedded matrix:
/// 2 for {1,-1}, 3 for {1,0}. Valid for blocks strictly smaller than the
/// host in both dimensions; geometries where the prediction can depend on
/// the block position are refused.
std::size_t embedded_rank(Alphabet alphabet, std::size_t rows, std::size_t cols,
                          std::size_t block_rows, std::size_t block_cols);

/// Same prediction, validating the spec's fill value first.
std::size_t embedded_rank(const EmbedSpec& spec);

/// Runs the Jacobi SVD and classifies each rank-1 component by the
/// projection norm of its singular vectors onto the span of the analytic
/// background directions: background at >= 0.99 on both sides, payload at
/// <= 0.2 on both; anything else raises ClassificationError. The payload sum
/// localizes the block (entries above half the peak payload magnitude) and
/// the fill value is read back as the mean of the input entries inside that
/// box.
RetrievalReport separate(const Matrix& embedded, Alphabet alphabet);

/// Sum of the report's background components.
Matrix reconstruct_background(const RetrievalReport& report);

} // namespace checkmat
