#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "checkmat/embedding.hpp"
#include "checkmat/factorization.hpp"
#include "checkmat/fastops.hpp"
#include "checkmat/io.hpp"
#include "checkmat/matrix.hpp"
#include "checkmat/patterns.hpp"
#include "checkmat/rank.hpp"

namespace {

using namespace checkmat;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitClassification = 4;

/// Writes to the path, or to stdout when no path was given.
void emit(const std::optional<std::string>& out, const std::string& text) {
    if (out && *out != "-") {
        write_text_file(*out, text);
    } else {
        std::cout << text;
    }
}

/// Caller tolerance if given, CHECKMAT_TOL otherwise, library default last.
double resolve_tolerance(const std::optional<double>& cli_tol, const Matrix& m) {
    if (cli_tol) {
        return *cli_tol;
    }
    if (const char* env = std::getenv("CHECKMAT_TOL")) {
        try {
            return std::stod(env);
        } catch (const std::exception&) {
            throw ArgumentError("CHECKMAT_TOL is not a number: '" + std::string(env) + "'");
        }
    }
    return default_rank_tolerance(m);
}

RenderFormat parse_format(const std::string& name) {
    if (name == "csv") {
        return RenderFormat::Csv;
    }
    if (name == "pgm") {
        return RenderFormat::Pgm;
    }
    if (name == "ascii") {
        return RenderFormat::Ascii;
    }
    throw ArgumentError("unknown format '" + name + "' (expected csv, pgm, or ascii)");
}

RenderSpec render_spec_for(const Matrix& m, RenderFormat format, Alphabet alphabet) {
    RenderSpec spec = auto_render_spec(m, format);
    // Patterns render against the alphabet range even if the matrix happens
    // to be constant.
    spec.lo = std::min(alphabet.low_symbol(), 0.0);
    spec.hi = 1.0;
    if (alphabet.kind == AlphabetKind::PlusMinus) {
        spec.lo = -1.0;
    }
    return spec;
}

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ArgumentError("range must look like LO:HI");
    }
    try {
        return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ArgumentError("range must look like LO:HI with numeric endpoints");
    }
}

std::vector<std::pair<std::size_t, std::size_t>> parse_sizes(
    const std::vector<std::string>& tokens) {
    std::vector<std::pair<std::size_t, std::size_t>> sizes;
    for (const std::string& token : tokens) {
        const auto x = token.find('x');
        if (x == std::string::npos) {
            throw ArgumentError("size must look like MxN, got '" + token + "'");
        }
        try {
            sizes.emplace_back(std::stoul(token.substr(0, x)),
                               std::stoul(token.substr(x + 1)));
        } catch (const std::exception&) {
            throw ArgumentError("size must look like MxN, got '" + token + "'");
        }
    }
    return sizes;
}

struct GenArgs {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string alphabet = "plus-minus";
    std::string phase = "high-first";
    std::string format = "csv";
    std::optional<std::string> out;
};

int run_gen(const GenArgs& args) {
    const Alphabet alphabet = parse_alphabet(args.alphabet, parse_phase(args.phase));
    const Matrix pattern = gen_checkered(args.rows, args.cols, alphabet);
    const RenderFormat format = parse_format(args.format);
    emit(args.out, render_matrix(pattern, render_spec_for(pattern, format, alphabet)));
    return kExitOk;
}

struct RankArgs {
    std::string input;
    std::optional<double> tol;
    std::optional<std::string> out;
    std::optional<std::string> echelon_out;
};

int run_rank(const RankArgs& args) {
    const Matrix m = read_matrix_csv(args.input);
    const RankReport report = rank_gauss(m, resolve_tolerance(args.tol, m));
    emit(args.out, rank_report_to_json(report));
    if (args.echelon_out) {
        write_matrix_csv(*args.echelon_out, report.echelon_form);
    }
    return kExitOk;
}

struct SweepArgs {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> alphas;
    std::vector<double> linspace;
    std::optional<double> tol;
    std::optional<std::string> out;
};

int run_sweep_alpha(const SweepArgs& args) {
    std::vector<double> alphas = args.alphas;
    if (!args.linspace.empty()) {
        const double lo = args.linspace[0];
        const double hi = args.linspace[1];
        const int count = static_cast<int>(args.linspace[2]);
        if (count < 2) {
            throw ArgumentError("linspace needs at least 2 points");
        }
        for (int k = 0; k < count; ++k) {
            // Endpoint-exact interpolation so the roots are hit exactly.
            alphas.push_back((lo * (count - 1 - k) + hi * k) / (count - 1));
        }
    }

    std::string csv = "alpha,analytic_rank,numerical_rank,min_pivot\n";
    for (double alpha : alphas) {
        const Matrix blend = alpha_blend(alpha, args.rows, args.cols);
        const RankReport report = rank_gauss(blend, resolve_tolerance(args.tol, blend));
        const double min_pivot =
            report.pivot_magnitudes.empty() ? 0.0 : report.pivot_magnitudes.back();
        csv += format_double(alpha) + "," +
               std::to_string(alpha_rank(alpha, args.rows, args.cols)) + "," +
               std::to_string(report.numerical_rank) + "," + format_double(min_pivot) +
               "\n";
    }
    emit(args.out, csv);
    return kExitOk;
}

struct FactorArgs {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string alphabet = "plus-minus";
    bool ones = false;
    std::optional<std::string> out;
};

int run_factor(const FactorArgs& args) {
    std::vector<RankOneFactor> factors;
    if (args.ones) {
        factors.push_back(analytic_factor_ones(args.rows, args.cols));
    } else if (parse_alphabet(args.alphabet).kind == AlphabetKind::PlusMinus) {
        factors.push_back(analytic_factor_checkered(args.rows, args.cols));
    } else {
        auto [a, b] = analytic_factor_zero_one(args.rows, args.cols);
        factors.push_back(std::move(a));
        factors.push_back(std::move(b));
    }
    emit(args.out, factors_to_json(factors));
    return kExitOk;
}

struct SvdArgs {
    std::string input;
    double tol = 1e-12;
    std::size_t max_sweeps = 30;
    std::optional<std::string> out;
};

int run_svd(const SvdArgs& args) {
    const Matrix m = read_matrix_csv(args.input);
    emit(args.out, svd_result_to_json(svd_jacobi(m, SvdOptions{args.tol, args.max_sweeps})));
    return kExitOk;
}

struct EmbedArgs {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string alphabet = "plus-minus";
    std::string phase = "high-first";
    std::size_t block_rows = 2;
    std::size_t block_cols = 2;
    std::vector<std::size_t> at;
    std::optional<double> fill;
    std::optional<std::string> out;
    std::optional<std::string> spec_out;
};

int run_embed(const EmbedArgs& args) {
    EmbedSpec spec;
    spec.rows = args.rows;
    spec.cols = args.cols;
    spec.alphabet = parse_alphabet(args.alphabet, parse_phase(args.phase));
    spec.block_rows = args.block_rows;
    spec.block_cols = args.block_cols;
    if (args.at.empty()) {
        // Centered placement, the paper-figure default.
        spec.block_row = (args.rows - std::min(args.block_rows, args.rows)) / 2;
        spec.block_col = (args.cols - std::min(args.block_cols, args.cols)) / 2;
    } else {
        spec.block_row = args.at[0];
        spec.block_col = args.at[1];
    }
    spec.fill_value = args.fill ? *args.fill : alphabet_mean(spec.alphabet);

    emit(args.out, matrix_to_csv(embed_block(spec)));
    if (args.spec_out) {
        write_text_file(*args.spec_out, embed_spec_to_json(spec));
    }
    return kExitOk;
}

struct RetrieveArgs {
    std::string input;
    std::string alphabet;
    std::optional<std::string> out;
    std::optional<std::string> components_dir;
    std::string components_format = "pgm";
};

int run_retrieve(const RetrieveArgs& args) {
    const Matrix embedded = read_matrix_csv(args.input);
    const Alphabet alphabet = parse_alphabet(args.alphabet);
    const RetrievalReport report = separate(embedded, alphabet);
    emit(args.out, retrieval_report_to_json(report));

    if (args.components_dir) {
        const RenderFormat format = parse_format(args.components_format);
        std::filesystem::create_directories(*args.components_dir);
        std::size_t index = 0;
        auto write_component = [&](const RankOneFactor& f, const char* kind) {
            const Matrix dense = f.realize();
            const std::string name = "component_" +
                                     std::string(index < 10 ? "0" : "") +
                                     std::to_string(index) + "_" + kind +
                                     (format == RenderFormat::Csv ? ".csv" : ".pgm");
            const std::filesystem::path path =
                std::filesystem::path(*args.components_dir) / name;
            if (format == RenderFormat::Csv) {
                write_matrix_csv(path, dense);
            } else {
                write_text_file(path, matrix_to_pgm(dense, auto_render_spec(dense, format)));
            }
            ++index;
        };
        for (const auto& f : report.background_components) {
            write_component(f, "background");
        }
        for (const auto& f : report.payload_components) {
            write_component(f, "payload");
        }
    }
    return kExitOk;
}

struct BenchArgs {
    std::vector<std::string> sizes{"30x30"};
    std::size_t rank = 1;
    std::size_t trials = 5;
    std::optional<std::string> out;
};

int run_bench(const BenchArgs& args) {
    const auto sizes = parse_sizes(args.sizes);
    const auto table = bench(sizes, args.rank, args.trials);
    if (args.out && *args.out != "-") {
        write_text_file(*args.out, bench_table_to_csv(table));
        std::cout << bench_table_to_text(table);
    } else {
        std::cout << bench_table_to_csv(table);
    }
    return kExitOk;
}

struct RenderArgs {
    std::string input;
    std::string format = "pgm";
    std::optional<std::string> range;
    std::optional<std::string> gray;
    std::optional<std::string> out;
};

int run_render(const RenderArgs& args) {
    const Matrix m = read_matrix_csv(args.input);
    RenderSpec spec = auto_render_spec(m, parse_format(args.format));
    if (args.range) {
        std::tie(spec.lo, spec.hi) = parse_range(*args.range);
    }
    if (args.gray) {
        const auto [lo, hi] = parse_range(*args.gray);
        spec.gray_low = static_cast<int>(lo);
        spec.gray_high = static_cast<int>(hi);
    }
    emit(args.out, render_matrix(m, spec));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Checkered-pattern matrix toolkit: generation, rank analysis, SVD, "
                 "block embedding/retrieval, and structured fast operations"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a checkered pattern");
    gen->add_option("rows", gen_args.rows, "Row count")->required();
    gen->add_option("cols", gen_args.cols, "Column count")->required();
    gen->add_option("--alphabet", gen_args.alphabet, "zero-one or plus-minus");
    gen->add_option("--phase", gen_args.phase, "high-first or low-first");
    gen->add_option("--format", gen_args.format, "csv, pgm, or ascii");
    gen->add_option("--out", gen_args.out, "Output path (stdout when omitted)");

    RankArgs rank_args;
    CLI::App* rank = app.add_subcommand("rank", "Numerical rank of a CSV matrix");
    rank->add_option("input", rank_args.input, "Matrix CSV path")->required();
    rank->add_option("--tol", rank_args.tol, "Pivot tolerance");
    rank->add_option("--out", rank_args.out, "Report JSON path");
    rank->add_option("--echelon", rank_args.echelon_out, "Echelon form CSV path");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep-alpha", "Rank across the blend family");
    sweep->add_option("rows", sweep_args.rows, "Row count")->required();
    sweep->add_option("cols", sweep_args.cols, "Column count")->required();
    sweep->add_option("--alphas", sweep_args.alphas, "Blend coefficients")->delimiter(',');
    sweep->add_option("--linspace", sweep_args.linspace, "LO HI COUNT grid")->expected(3);
    sweep->add_option("--tol", sweep_args.tol, "Pivot tolerance");
    sweep->add_option("--out", sweep_args.out, "Sweep CSV path");

    FactorArgs factor_args;
    CLI::App* factor = app.add_subcommand("factor", "Closed-form rank-1 factors");
    factor->add_option("rows", factor_args.rows, "Row count")->required();
    factor->add_option("cols", factor_args.cols, "Column count")->required();
    factor->add_option("--alphabet", factor_args.alphabet, "zero-one or plus-minus");
    factor->add_flag("--ones", factor_args.ones, "Factor the all-ones matrix instead");
    factor->add_option("--out", factor_args.out, "Factors JSON path");

    SvdArgs svd_args;
    CLI::App* svd = app.add_subcommand("svd", "One-sided Jacobi SVD of a CSV matrix");
    svd->add_option("input", svd_args.input, "Matrix CSV path")->required();
    svd->add_option("--tol", svd_args.tol, "Convergence tolerance");
    svd->add_option("--max-sweeps", svd_args.max_sweeps, "Sweep limit");
    svd->add_option("--out", svd_args.out, "Decomposition JSON path");

    EmbedArgs embed_args;
    CLI::App* embed = app.add_subcommand("embed", "Embed a uniform block in a pattern");
    embed->add_option("rows", embed_args.rows, "Row count")->required();
    embed->add_option("cols", embed_args.cols, "Column count")->required();
    embed->add_option("--alphabet", embed_args.alphabet, "zero-one or plus-minus");
    embed->add_option("--phase", embed_args.phase, "high-first or low-first");
    embed->add_option("--block-rows", embed_args.block_rows, "Block height");
    embed->add_option("--block-cols", embed_args.block_cols, "Block width");
    embed->add_option("--at", embed_args.at, "Top-left ROW COL (default: centered)")
        ->expected(2);
    embed->add_option("--fill", embed_args.fill, "Fill value (default: alphabet mean)");
    embed->add_option("--out", embed_args.out, "Embedded matrix CSV path");
    embed->add_option("--spec-out", embed_args.spec_out, "Embedding spec JSON path");

    RetrieveArgs retrieve_args;
    CLI::App* retrieve = app.add_subcommand("retrieve", "Separate background and payload");
    retrieve->add_option("input", retrieve_args.input, "Embedded matrix CSV path")
        ->required();
    retrieve->add_option("--alphabet", retrieve_args.alphabet, "zero-one or plus-minus")
        ->required();
    retrieve->add_option("--out", retrieve_args.out, "Report JSON path");
    retrieve->add_option("--components-dir", retrieve_args.components_dir,
                         "Directory for per-component renders");
    retrieve->add_option("--components-format", retrieve_args.components_format,
                         "pgm or csv");

    BenchArgs bench_args;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Structured vs dense matvec");
    bench_cmd->add_option("--sizes", bench_args.sizes, "Sizes like 30x30")->delimiter(',');
    bench_cmd->add_option("--rank", bench_args.rank, "Structural rank");
    bench_cmd->add_option("--trials", bench_args.trials, "Trials per size");
    bench_cmd->add_option("--out", bench_args.out, "Table CSV path");

    RenderArgs render_args;
    CLI::App* render = app.add_subcommand("render", "Render a CSV matrix");
    render->add_option("input", render_args.input, "Matrix CSV path")->required();
    render->add_option("--format", render_args.format, "csv, pgm, or ascii");
    render->add_option("--range", render_args.range, "Value range LO:HI");
    render->add_option("--gray", render_args.gray, "Gray range LO:HI");
    render->add_option("--out", render_args.out, "Output path");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) {
            return run_gen(gen_args);
        }
        if (rank->parsed()) {
            return run_rank(rank_args);
        }
        if (sweep->parsed()) {
            return run_sweep_alpha(sweep_args);
        }
        if (factor->parsed()) {
            return run_factor(factor_args);
        }
        if (svd->parsed()) {
            return run_svd(svd_args);
        }
        if (embed->parsed()) {
            return run_embed(embed_args);
        }
        if (retrieve->parsed()) {
            return run_retrieve(retrieve_args);
        }
        if (bench_cmd->parsed()) {
            return run_bench(bench_args);
        }
        if (render->parsed()) {
            return run_render(render_args);
        }
        std::cerr << app.help();
        return kExitUsage;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const ClassificationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitClassification;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
