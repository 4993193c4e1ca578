#pragma once

#include <cstddef>

#include "checkmat/matrix.hpp"

namespace checkmat {

/// Which two-symbol value set a pattern uses.
enum class AlphabetKind { ZeroOne, PlusMinus };

/// Which symbol occupies cell (0,0).
enum class Phase { HighFirst, LowFirst };

/// Two-symbol alphabet plus phase. The high symbol is 1 for both kinds;
/// the low symbol is 0 ({1,0}) or -1 ({1,-1}).
struct Alphabet {
    AlphabetKind kind = AlphabetKind::PlusMinus;
    Phase phase = Phase::HighFirst;

    double high_symbol() const { return 1.0; }
    double low_symbol() const { return kind == AlphabetKind::ZeroOne ? 0.0 : -1.0; }
};

constexpr Alphabet zero_one(Phase phase = Phase::HighFirst) {
    return Alphabet{AlphabetKind::ZeroOne, phase};
}
constexpr Alphabet plus_minus(Phase phase = Phase::HighFirst) {
    return Alphabet{AlphabetKind::PlusMinus, phase};
}

/// Checkered pattern: entry (i,j) is the high symbol when i+j is even
/// (HighFirst) or odd (LowFirst).
Matrix gen_checkered(std::size_t rows, std::size_t cols, Alphabet alphabet);

/// All-ones matrix.
Matrix gen_ones(std::size_t rows, std::size_t cols);

/// (B + ones)/2. Every entry of the input must be exactly 1 or -1.
Matrix affine_to_zero_one(const Matrix& plus_minus_matrix);

/// 2A - ones. Every entry of the input must be exactly 1 or 0.
Matrix affine_to_plus_minus(const Matrix& zero_one_matrix);

/// (1-alpha)*B + alpha*ones with B the {1,-1} HighFirst pattern: entries are
/// 1 on even-parity cells and -1+2*alpha on odd-parity cells.
Matrix alpha_blend(double alpha, std::size_t rows, std::size_t cols);

} // namespace checkmat
