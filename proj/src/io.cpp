#include "checkmat/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace checkmat {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_field(std::string_view field, std::size_t line) {
    const std::string_view value = trim(field);
    if (value.empty()) {
        throw ParseError("empty field on line " + std::to_string(line), line);
    }
    double result = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), result);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ParseError("non-numeric field '" + std::string(value) + "' on line " +
                             std::to_string(line),
                         line);
    }
    return result;
}

std::string csv_row(const Matrix& m, std::size_t i) {
    std::string row;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j > 0) {
            row += ',';
        }
        row += format_double(m(i, j));
    }
    return row;
}

int gray_value(double v, const RenderSpec& spec) {
    const double t = (v - spec.lo) / (spec.hi - spec.lo);
    const double g = spec.gray_low + t * (spec.gray_high - spec.gray_low);
    const long rounded = std::lround(g);
    return static_cast<int>(std::clamp(rounded, 0L, 255L));
}

void validate_render_spec(const RenderSpec& spec) {
    if (spec.gray_low == spec.gray_high) {
        throw ArgumentError("gray endpoints must differ");
    }
    if (spec.gray_low < 0 || spec.gray_low > 255 || spec.gray_high < 0 ||
        spec.gray_high > 255) {
        throw ArgumentError("gray endpoints must lie in 0..255");
    }
    if (!(spec.lo < spec.hi)) {
        throw ArgumentError("value range must satisfy lo < hi");
    }
}

} // namespace

std::string format_double(double value) {
    if (value == 0.0) {
        return "0";
    }
    std::array<char, 32> buffer{};
    const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (ec != std::errc{}) {
        throw ArgumentError("value is not representable as text");
    }
    return std::string(buffer.data(), ptr);
}

std::string matrix_to_csv(const Matrix& m) {
    std::string text;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        text += csv_row(m, i);
        text += '\n';
    }
    return text;
}

Matrix matrix_from_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line = 0;
    std::size_t first_width = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view raw = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line;
        if (trim(raw).empty()) {
            if (pos > text.size()) {
                break;
            }
            continue;
        }

        std::vector<double> row;
        std::size_t field_start = 0;
        while (field_start <= raw.size()) {
            const std::size_t comma = std::min(raw.find(',', field_start), raw.size());
            row.push_back(parse_field(raw.substr(field_start, comma - field_start), line));
            field_start = comma + 1;
            if (comma == raw.size()) {
                break;
            }
        }
        if (rows.empty()) {
            first_width = row.size();
        } else if (row.size() != first_width) {
            throw ParseError("ragged row on line " + std::to_string(line) + ": expected " +
                                 std::to_string(first_width) + " fields, got " +
                                 std::to_string(row.size()),
                             line);
        }
        rows.push_back(std::move(row));
        if (pos > text.size()) {
            break;
        }
    }

    if (rows.empty()) {
        throw ParseError("no data rows", line);
    }
    Matrix result(rows.size(), first_width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < first_width; ++j) {
            result(i, j) = rows[i][j];
        }
    }
    return result;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
    return matrix_from_csv(read_text_file(path));
}

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
    write_text_file(path, matrix_to_csv(m));
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failed for '" + path.string() + "'");
    }
    return std::move(buffer).str();
}

RenderSpec auto_render_spec(const Matrix& m, RenderFormat format) {
    double lo = m.data()[0];
    double hi = lo;
    for (double v : m.data()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(lo < hi)) {
        lo -= 0.5;
        hi += 0.5;
    }
    return RenderSpec{format, 0, 255, lo, hi};
}

std::string matrix_to_pgm(const Matrix& m, const RenderSpec& spec) {
    validate_render_spec(spec);
    std::string text = "P2\n" + std::to_string(m.cols()) + " " + std::to_string(m.rows()) +
                       "\n255\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                text += ' ';
            }
            text += std::to_string(gray_value(m(i, j), spec));
        }
        text += '\n';
    }
    return text;
}

std::string matrix_to_ascii(const Matrix& m, const RenderSpec& spec) {
    validate_render_spec(spec);
    const double mid = 0.5 * (spec.lo + spec.hi);
    std::string text;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                text += ' ';
            }
            text += (m(i, j) >= mid) ? "█" : "·";
        }
        text += '\n';
    }
    return text;
}

std::string render_matrix(const Matrix& m, const RenderSpec& spec) {
    switch (spec.format) {
    case RenderFormat::Csv:
        return matrix_to_csv(m);
    case RenderFormat::Pgm:
        return matrix_to_pgm(m, spec);
    case RenderFormat::Ascii:
        return matrix_to_ascii(m, spec);
    }
    throw ArgumentError("unknown render format");
}

std::string rank_report_to_json(const RankReport& report) {
    ordered_json doc;
    doc["rank"] = report.numerical_rank;
    doc["pivots"] = report.pivot_magnitudes;
    doc["tolerance"] = report.tolerance_used;
    return doc.dump(2) + "\n";
}

namespace {

std::vector<std::string> matrix_rows_csv(const Matrix& m) {
    std::vector<std::string> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows.push_back(csv_row(m, i));
    }
    return rows;
}

std::string vector_csv(const std::vector<double>& v) {
    std::string text;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
            text += ',';
        }
        text += format_double(v[i]);
    }
    return text;
}

std::vector<double> component_sigmas(const std::vector<RankOneFactor>& factors) {
    std::vector<double> sigmas;
    sigmas.reserve(factors.size());
    for (const auto& f : factors) {
        sigmas.push_back(f.sigma);
    }
    return sigmas;
}

} // namespace

std::string svd_result_to_json(const SvdResult& svd) {
    ordered_json doc;
    doc["singular_values"] = svd.singular_values;
    doc["u"] = matrix_rows_csv(svd.u);
    doc["v"] = matrix_rows_csv(svd.v);
    return doc.dump(2) + "\n";
}

std::string retrieval_report_to_json(const RetrievalReport& report) {
    ordered_json doc;
    doc["background_sigmas"] = component_sigmas(report.background_components);
    doc["payload_sigmas"] = component_sigmas(report.payload_components);
    if (report.block.empty()) {
        doc["block"] = nullptr;
    } else {
        doc["block"] = {{"row", report.block.row},
                        {"col", report.block.col},
                        {"rows", report.block.rows},
                        {"cols", report.block.cols}};
    }
    doc["fill_value"] = report.recovered_fill_value;
    doc["residual_norm"] = report.residual_norm;
    return doc.dump(2) + "\n";
}

std::string embed_spec_to_json(const EmbedSpec& spec) {
    ordered_json doc;
    doc["rows"] = spec.rows;
    doc["cols"] = spec.cols;
    doc["alphabet"] = alphabet_name(spec.alphabet);
    doc["phase"] = phase_name(spec.alphabet.phase);
    doc["block"] = {{"row", spec.block_row},
                    {"col", spec.block_col},
                    {"rows", spec.block_rows},
                    {"cols", spec.block_cols}};
    doc["fill_value"] = spec.fill_value;
    return doc.dump(2) + "\n";
}

std::string factors_to_json(const std::vector<RankOneFactor>& factors) {
    ordered_json list = ordered_json::array();
    for (const auto& f : factors) {
        list.push_back({{"sigma", f.sigma}, {"left", vector_csv(f.left)},
                        {"right", vector_csv(f.right)}});
    }
    ordered_json doc;
    doc["factors"] = list;
    return doc.dump(2) + "\n";
}

std::string flop_report_to_json(const FlopReport& report) {
    ordered_json doc;
    doc["structured_flops"] = report.structured_flops;
    doc["dense_flops"] = report.dense_flops;
    doc["ratio"] = report.ratio;
    return doc.dump(2) + "\n";
}

std::string alphabet_name(Alphabet alphabet) {
    return alphabet.kind == AlphabetKind::ZeroOne ? "zero-one" : "plus-minus";
}

std::string phase_name(Phase phase) {
    return phase == Phase::HighFirst ? "high-first" : "low-first";
}

Alphabet parse_alphabet(std::string_view name, Phase phase) {
    if (name == "zero-one" || name == "01" || name == "zeroone") {
        return Alphabet{AlphabetKind::ZeroOne, phase};
    }
    if (name == "plus-minus" || name == "pm" || name == "plusminus") {
        return Alphabet{AlphabetKind::PlusMinus, phase};
    }
    throw ArgumentError("unknown alphabet '" + std::string(name) +
                        "' (expected zero-one or plus-minus)");
}

Phase parse_phase(std::string_view name) {
    if (name == "high-first" || name == "high") {
        return Phase::HighFirst;
    }
    if (name == "low-first" || name == "low") {
        return Phase::LowFirst;
    }
    throw ArgumentError("unknown phase '" + std::string(name) +
                        "' (expected high-first or low-first)");
}

std::string bench_table_to_csv(const std::vector<BenchRow>& table) {
    std::string text =
        "size,rank,structured_flops,dense_flops,ratio,median_ns_structured,median_ns_dense\n";
    for (const auto& row : table) {
        text += std::to_string(row.rows) + "x" + std::to_string(row.cols) + "," +
                std::to_string(row.rank) + "," + std::to_string(row.structured_flops) + "," +
                std::to_string(row.dense_flops) + "," + format_double(row.ratio) + "," +
                std::to_string(row.median_ns_structured) + "," +
                std::to_string(row.median_ns_dense) + "\n";
    }
    return text;
}

std::string bench_table_to_text(const std::vector<BenchRow>& table) {
    static constexpr const char* kHeader[] = {"size",  "rank",         "structured",
                                              "dense", "ratio",        "median ns (structured)",
                                              "median ns (dense)"};
    std::vector<std::array<std::string, 7>> cells;
    for (const auto& row : table) {
        cells.push_back({std::to_string(row.rows) + "x" + std::to_string(row.cols),
                         std::to_string(row.rank), std::to_string(row.structured_flops),
                         std::to_string(row.dense_flops), format_double(row.ratio),
                         std::to_string(row.median_ns_structured),
                         std::to_string(row.median_ns_dense)});
    }
    std::array<std::size_t, 7> widths{};
    for (std::size_t c = 0; c < 7; ++c) {
        widths[c] = std::string(kHeader[c]).size();
        for (const auto& row : cells) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    auto pad = [](const std::string& s, std::size_t width) {
        return s + std::string(width - s.size(), ' ');
    };
    std::string text;
    for (std::size_t c = 0; c < 7; ++c) {
        text += pad(kHeader[c], widths[c]);
        text += (c + 1 < 7) ? "  " : "";
    }
    text += '\n';
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < 7; ++c) {
            text += pad(row[c], widths[c]);
            text += (c + 1 < 7) ? "  " : "";
        }
        text += '\n';
    }
    return text;
}

} // namespace checkmat
