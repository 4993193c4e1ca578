#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "checkmat/embedding.hpp"
#include "checkmat/factorization.hpp"
#include "checkmat/fastops.hpp"
#include "checkmat/matrix.hpp"
#include "checkmat/rank.hpp"

namespace checkmat {

/// Shortest decimal representation that round-trips to the same double;
/// negative zero is canonicalized to "0".
std::string format_double(double value);

/// One row per line, comma-separated, no header, trailing newline.
std::string matrix_to_csv(const Matrix& m);

/// Parses CSV text; blank lines are ignored. Ragged rows or non-numeric
/// fields raise ParseError carrying the 1-based line number.
Matrix matrix_from_csv(std::string_view text);

Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);

void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

enum class RenderFormat { Csv, Pgm, Ascii };

/// Gray mapping for image/text rendering: values in [lo, hi] map linearly
/// onto [gray_low, gray_high], clamped to 0..255.
struct RenderSpec {
    RenderFormat format = RenderFormat::Pgm;
    int gray_low = 0;
    int gray_high = 255;
    double lo = -1.0;
    double hi = 1.0;
};

/// Render range covering the matrix entries, widened when all entries
/// coincide so that lo < hi always holds.
RenderSpec auto_render_spec(const Matrix& m, RenderFormat format);

/// Plain (P2) PGM with maxval 255.
std::string matrix_to_pgm(const Matrix& m, const RenderSpec& spec);

/// Two-glyph grid: entries at or above the range midpoint print as a full
/// block, the rest as a middle dot.
std::string matrix_to_ascii(const Matrix& m, const RenderSpec& spec);

std::string render_matrix(const Matrix& m, const RenderSpec& spec);

// JSON report serialization. Double fields use the shortest round-trip
// format so identical inputs yield byte-identical documents.
std::string rank_report_to_json(const RankReport& report);
std::string svd_result_to_json(const SvdResult& svd);
std::string retrieval_report_to_json(const RetrievalReport& report);
std::string embed_spec_to_json(const EmbedSpec& spec);
std::string factors_to_json(const std::vector<RankOneFactor>& factors);
std::string flop_report_to_json(const FlopReport& report);

std::string alphabet_name(Alphabet alphabet);
std::string phase_name(Phase phase);
Alphabet parse_alphabet(std::string_view name, Phase phase = Phase::HighFirst);
Phase parse_phase(std::string_view name);

/// Benchmark table as CSV
/// (rows,cols,rank,structured_flops,dense_flops,ratio,median_ns_structured,
/// median_ns_dense) and as aligned text.
std::string bench_table_to_csv(const std::vector<BenchRow>& table);
std::string bench_table_to_text(const std::vector<BenchRow>& table);

} // namespace checkmat
