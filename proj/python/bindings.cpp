#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <utility>
#include <vector>

#include "checkmat/embedding.hpp"
#include "checkmat/errors.hpp"
#include "checkmat/factorization.hpp"
#include "checkmat/fastops.hpp"
#include "checkmat/io.hpp"
#include "checkmat/matrix.hpp"
#include "checkmat/patterns.hpp"
#include "checkmat/rank.hpp"

namespace py = pybind11;
using namespace checkmat;

namespace {

Matrix matrix_from_buffer(const py::buffer& buffer) {
    const py::buffer_info info = buffer.request();
    if (info.ndim != 2) {
        throw DimensionError("expected a 2-D buffer, got " + std::to_string(info.ndim) +
                             " dimensions");
    }
    if (info.format != py::format_descriptor<double>::format()) {
        throw ArgumentError("expected a float64 buffer (convert with astype(float))");
    }
    const auto rows = static_cast<std::size_t>(info.shape[0]);
    const auto cols = static_cast<std::size_t>(info.shape[1]);
    Matrix result(rows, cols);
    const auto* base = static_cast<const char*>(info.ptr);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const char* cell = base + static_cast<std::size_t>(info.strides[0]) * i +
                               static_cast<std::size_t>(info.strides[1]) * j;
            double value;
            std::memcpy(&value, cell, sizeof(double));
            result(i, j) = value;
        }
    }
    return result;
}

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw DimensionError("need at least one row and one column");
    }
    Matrix result(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != result.cols()) {
            throw DimensionError("ragged row " + std::to_string(i));
        }
        for (std::size_t j = 0; j < result.cols(); ++j) {
            result(i, j) = rows[i][j];
        }
    }
    return result;
}

std::vector<std::vector<double>> matrix_to_list(const Matrix& m) {
    std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            rows[i][j] = m(i, j);
        }
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Checkered-pattern matrices: rank structure, closed-form factorizations, "
              "Jacobi SVD, block embedding/retrieval, and structured fast operations";

    const auto base = py::register_exception<Error>(m, "CheckmatError");
    py::register_exception<DimensionError>(m, "DimensionError", base);
    py::register_exception<ArgumentError>(m, "ArgumentError", base);
    py::register_exception<AlphabetError>(m, "AlphabetError", base);
    py::register_exception<GeometryError>(m, "GeometryError", base);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", base);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
    py::register_exception<ClassificationError>(m, "ClassificationError", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<IoError>(m, "IoError", base);

    py::enum_<AlphabetKind>(m, "AlphabetKind")
        .value("ZERO_ONE", AlphabetKind::ZeroOne)
        .value("PLUS_MINUS", AlphabetKind::PlusMinus);

    py::enum_<Phase>(m, "Phase")
        .value("HIGH_FIRST", Phase::HighFirst)
        .value("LOW_FIRST", Phase::LowFirst);

    py::class_<Alphabet>(m, "Alphabet")
        .def(py::init([](AlphabetKind kind, Phase phase) {
                 return Alphabet{kind, phase};
             }),
             py::arg("kind"), py::arg("phase") = Phase::HighFirst)
        .def_readwrite("kind", &Alphabet::kind)
        .def_readwrite("phase", &Alphabet::phase)
        .def("high_symbol", &Alphabet::high_symbol)
        .def("low_symbol", &Alphabet::low_symbol)
        .def("__repr__", [](const Alphabet& a) {
            return "Alphabet(" + alphabet_name(a) + ", " + phase_name(a.phase) + ")";
        });

    m.def("zero_one", &zero_one, py::arg("phase") = Phase::HighFirst);
    m.def("plus_minus", &plus_minus, py::arg("phase") = Phase::HighFirst);

    py::class_<Matrix>(m, "Matrix", py::buffer_protocol())
        .def(py::init<std::size_t, std::size_t, double>(), py::arg("rows"),
             py::arg("cols"), py::arg("fill") = 0.0)
        .def(py::init(&matrix_from_rows), py::arg("rows"))
        .def(py::init(&matrix_from_buffer), py::arg("buffer"))
        .def_buffer([](Matrix& self) {
            return py::buffer_info(self.data().data(), sizeof(double),
                                   py::format_descriptor<double>::format(), 2,
                                   {self.rows(), self.cols()},
                                   {sizeof(double) * self.cols(), sizeof(double)});
        })
        .def_property_readonly("rows", &Matrix::rows)
        .def_property_readonly("cols", &Matrix::cols)
        .def_property_readonly("shape",
                               [](const Matrix& self) {
                                   return py::make_tuple(self.rows(), self.cols());
                               })
        .def("__getitem__",
             [](const Matrix& self, std::pair<std::size_t, std::size_t> index) {
                 return self.at(index.first, index.second);
             })
        .def("__setitem__",
             [](Matrix& self, std::pair<std::size_t, std::size_t> index, double value) {
                 self.at(index.first, index.second) = value;
             })
        .def("tolist", &matrix_to_list)
        .def("max_abs", &Matrix::max_abs)
        .def("frobenius_norm", &Matrix::frobenius_norm)
        .def("transposed", &Matrix::transposed)
        .def("__eq__", [](const Matrix& a, const Matrix& b) { return a == b; })
        .def("__add__", [](const Matrix& a, const Matrix& b) { return a + b; })
        .def("__sub__", [](const Matrix& a, const Matrix& b) { return a - b; })
        .def("__rmul__", [](const Matrix& self, double scalar) { return scalar * self; })
        .def("__repr__", [](const Matrix& self) {
            return "Matrix(" + std::to_string(self.rows()) + "x" +
                   std::to_string(self.cols()) + ")";
        });

    m.def("max_abs_diff", &max_abs_diff, py::arg("a"), py::arg("b"));

    // patterns
    m.def("gen_checkered", &gen_checkered, py::arg("rows"), py::arg("cols"),
          py::arg("alphabet") = plus_minus());
    m.def("gen_ones", &gen_ones, py::arg("rows"), py::arg("cols"));
    m.def("affine_to_zero_one", &affine_to_zero_one, py::arg("matrix"));
    m.def("affine_to_plus_minus", &affine_to_plus_minus, py::arg("matrix"));
    m.def("alpha_blend", &alpha_blend, py::arg("alpha"), py::arg("rows"), py::arg("cols"));

    // rank
    py::class_<RankReport>(m, "RankReport")
        .def_readonly("numerical_rank", &RankReport::numerical_rank)
        .def_readonly("pivot_magnitudes", &RankReport::pivot_magnitudes)
        .def_readonly("tolerance_used", &RankReport::tolerance_used)
        .def_readonly("echelon_form", &RankReport::echelon_form)
        .def("__repr__", [](const RankReport& r) {
            return "RankReport(rank=" + std::to_string(r.numerical_rank) + ")";
        });

    m.def("default_rank_tolerance", &default_rank_tolerance, py::arg("matrix"));
    m.def("rank_gauss",
          py::overload_cast<const Matrix&, double>(&rank_gauss), py::arg("matrix"),
          py::arg("tol"));
    m.def("rank_gauss", py::overload_cast<const Matrix&>(&rank_gauss), py::arg("matrix"));
    m.def("analytic_checkered_rank", &analytic_checkered_rank, py::arg("alphabet"),
          py::arg("rows"), py::arg("cols"));
    m.def("alpha_rank", &alpha_rank, py::arg("alpha"), py::arg("rows"), py::arg("cols"));
    m.def("alpha_roots", &alpha_roots);

    // factorization
    py::class_<RankOneFactor>(m, "RankOneFactor")
        .def(py::init([](double sigma, std::vector<double> left,
                         std::vector<double> right) {
                 return RankOneFactor{sigma, std::move(left), std::move(right)};
             }),
             py::arg("sigma"), py::arg("left"), py::arg("right"))
        .def_readwrite("sigma", &RankOneFactor::sigma)
        .def_readwrite("left", &RankOneFactor::left)
        .def_readwrite("right", &RankOneFactor::right)
        .def("realize", &RankOneFactor::realize)
        .def("__repr__", [](const RankOneFactor& f) {
            return "RankOneFactor(sigma=" + format_double(f.sigma) + ", " +
                   std::to_string(f.left.size()) + "x" + std::to_string(f.right.size()) +
                   ")";
        });

    py::class_<SvdResult>(m, "SvdResult")
        .def_readonly("u", &SvdResult::u)
        .def_readonly("singular_values", &SvdResult::singular_values)
        .def_readonly("v", &SvdResult::v)
        .def("reconstruct", &SvdResult::reconstruct);

    m.def("analytic_factor_checkered", &analytic_factor_checkered, py::arg("rows"),
          py::arg("cols"));
    m.def("analytic_factor_ones", &analytic_factor_ones, py::arg("rows"), py::arg("cols"));
    m.def("analytic_factor_zero_one", &analytic_factor_zero_one, py::arg("rows"),
          py::arg("cols"));
    m.def(
        "svd_jacobi",
        [](const Matrix& matrix, double tol, std::size_t max_sweeps) {
            return svd_jacobi(matrix, SvdOptions{tol, max_sweeps});
        },
        py::arg("matrix"), py::arg("tol") = 1e-12, py::arg("max_sweeps") = 30);
    m.def("truncate", &checkmat::truncate, py::arg("svd"), py::arg("k"));
    m.def("components", &checkmat::components, py::arg("svd"));

    // embedding
    py::class_<EmbedSpec>(m, "EmbedSpec")
        .def(py::init([](std::size_t rows, std::size_t cols, Alphabet alphabet,
                         std::size_t block_row, std::size_t block_col,
                         std::size_t block_rows, std::size_t block_cols,
                         std::optional<double> fill_value) {
                 EmbedSpec spec;
                 spec.rows = rows;
                 spec.cols = cols;
                 spec.alphabet = alphabet;
                 spec.block_row = block_row;
                 spec.block_col = block_col;
                 spec.block_rows = block_rows;
                 spec.block_cols = block_cols;
                 spec.fill_value = fill_value ? *fill_value : alphabet_mean(alphabet);
                 return spec;
             }),
             py::arg("rows"), py::arg("cols"), py::arg("alphabet"), py::arg("block_row"),
             py::arg("block_col"), py::arg("block_rows"), py::arg("block_cols"),
             py::arg("fill_value") = std::nullopt)
        .def_readwrite("rows", &EmbedSpec::rows)
        .def_readwrite("cols", &EmbedSpec::cols)
        .def_readwrite("alphabet", &EmbedSpec::alphabet)
        .def_readwrite("block_row", &EmbedSpec::block_row)
        .def_readwrite("block_col", &EmbedSpec::block_col)
        .def_readwrite("block_rows", &EmbedSpec::block_rows)
        .def_readwrite("block_cols", &EmbedSpec::block_cols)
        .def_readwrite("fill_value", &EmbedSpec::fill_value)
        .def("canonical_fill", &EmbedSpec::canonical_fill);

    py::class_<BlockBox>(m, "BlockBox")
        .def_readonly("row", &BlockBox::row)
        .def_readonly("col", &BlockBox::col)
        .def_readonly("rows", &BlockBox::rows)
        .def_readonly("cols", &BlockBox::cols)
        .def("empty", &BlockBox::empty)
        .def("__repr__", [](const BlockBox& b) {
            return "BlockBox(row=" + std::to_string(b.row) + ", col=" +
                   std::to_string(b.col) + ", rows=" + std::to_string(b.rows) +
                   ", cols=" + std::to_string(b.cols) + ")";
        });

    py::class_<RetrievalReport>(m, "RetrievalReport")
        .def_readonly("background_components", &RetrievalReport::background_components)
        .def_readonly("payload_components", &RetrievalReport::payload_components)
        .def_readonly("block", &RetrievalReport::block)
        .def_readonly("recovered_fill_value", &RetrievalReport::recovered_fill_value)
        .def_readonly("residual_norm", &RetrievalReport::residual_norm);

    m.def("alphabet_mean", &alphabet_mean, py::arg("alphabet"));
    m.def("embed_block", &embed_block, py::arg("spec"));
    m.def("embedded_rank",
          py::overload_cast<Alphabet, std::size_t, std::size_t, std::size_t, std::size_t>(
              &embedded_rank),
          py::arg("alphabet"), py::arg("rows"), py::arg("cols"), py::arg("block_rows"),
          py::arg("block_cols"));
    m.def("embedded_rank", py::overload_cast<const EmbedSpec&>(&embedded_rank),
          py::arg("spec"));
    m.def("separate", &separate, py::arg("embedded"), py::arg("alphabet"));
    m.def("reconstruct_background", &reconstruct_background, py::arg("report"));

    // fastops
    py::class_<StructuredMatrix>(m, "StructuredMatrix")
        .def_static("from_factors", &StructuredMatrix::from_factors, py::arg("rows"),
                    py::arg("cols"), py::arg("factors"))
        .def_readonly("rows", &StructuredMatrix::rows)
        .def_readonly("cols", &StructuredMatrix::cols)
        .def_readonly("factors", &StructuredMatrix::factors)
        .def("rank", &StructuredMatrix::rank)
        .def("realize", &StructuredMatrix::realize);

    py::class_<FlopReport>(m, "FlopReport")
        .def_readonly("structured_flops", &FlopReport::structured_flops)
        .def_readonly("dense_flops", &FlopReport::dense_flops)
        .def_readonly("ratio", &FlopReport::ratio)
        .def("__repr__", [](const FlopReport& r) {
            return "FlopReport(structured=" + std::to_string(r.structured_flops) +
                   ", dense=" + std::to_string(r.dense_flops) + ")";
        });

    py::class_<BenchRow>(m, "BenchRow")
        .def_readonly("rows", &BenchRow::rows)
        .def_readonly("cols", &BenchRow::cols)
        .def_readonly("rank", &BenchRow::rank)
        .def_readonly("structured_flops", &BenchRow::structured_flops)
        .def_readonly("dense_flops", &BenchRow::dense_flops)
        .def_readonly("ratio", &BenchRow::ratio)
        .def_readonly("median_ns_structured", &BenchRow::median_ns_structured)
        .def_readonly("median_ns_dense", &BenchRow::median_ns_dense);

    m.def("dense_matvec_flops", &dense_matvec_flops, py::arg("m"), py::arg("n"));
    m.def("structured_matvec_flops", &structured_matvec_flops, py::arg("m"), py::arg("n"),
          py::arg("r"));
    m.def("dense_matmul_flops", &dense_matmul_flops, py::arg("m"), py::arg("n"),
          py::arg("k"));
    m.def("structured_matmul_flops", &structured_matmul_flops, py::arg("m"), py::arg("n"),
          py::arg("k"), py::arg("r"));
    m.def(
        "matvec_structured",
        [](const StructuredMatrix& s, const std::vector<double>& x) {
            return matvec_structured(s, x);
        },
        py::arg("structured"), py::arg("x"));
    m.def("matmul_structured", &matmul_structured, py::arg("structured"), py::arg("x"));
    m.def(
        "bench",
        [](const std::vector<std::pair<std::size_t, std::size_t>>& sizes, std::size_t rank,
           std::size_t trials) { return bench(sizes, rank, trials); },
        py::arg("sizes"), py::arg("rank") = 1, py::arg("trials") = 5);
    m.def("bench_structured_matrix", &bench_structured_matrix, py::arg("rows"),
          py::arg("cols"), py::arg("rank"));

    // io
    m.def("format_double", &format_double, py::arg("value"));
    m.def("matrix_to_csv", &matrix_to_csv, py::arg("matrix"));
    m.def("matrix_from_csv", &matrix_from_csv, py::arg("text"));
    m.def(
        "read_matrix_csv",
        [](const std::string& path) { return read_matrix_csv(path); }, py::arg("path"));
    m.def(
        "write_matrix_csv",
        [](const std::string& path, const Matrix& matrix) {
            write_matrix_csv(path, matrix);
        },
        py::arg("path"), py::arg("matrix"));
    m.def(
        "matrix_to_pgm",
        [](const Matrix& matrix) {
            return matrix_to_pgm(matrix, auto_render_spec(matrix, RenderFormat::Pgm));
        },
        py::arg("matrix"));
    m.def(
        "matrix_to_ascii",
        [](const Matrix& matrix) {
            return matrix_to_ascii(matrix, auto_render_spec(matrix, RenderFormat::Ascii));
        },
        py::arg("matrix"));
    m.def("alphabet_name", &alphabet_name, py::arg("alphabet"));
}
