#include <doctest.h>

#include <cmath>
#include <string>

#include "checkmat/io.hpp"
#include "checkmat/matrix.hpp"
#include "checkmat/patterns.hpp"
#include "checkmat/rank.hpp"

using namespace checkmat;

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(-0.0) == "0");
    CHECK(format_double(-1.0) == "-1");
    CHECK(format_double(0.5) == "0.5");
    for (double v : {1.0 / 3.0, 1e-10, -2.75, 6.02e23, std::sqrt(2.0), 29.874507858731499}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("matrix CSV golden for the 4x5 pattern") {
    const Matrix a = gen_checkered(4, 5, zero_one());
    CHECK(matrix_to_csv(a) == "1,0,1,0,1\n0,1,0,1,0\n1,0,1,0,1\n0,1,0,1,0\n");
}

TEST_CASE("CSV round trips exactly") {
    const Matrix cases[] = {gen_checkered(5, 7, plus_minus()),
                            alpha_blend(-0.37, 4, 6),
                            Matrix::from_rows({{1e-10, -2.5e7}, {0.1, 1.0 / 3.0}})};
    for (const Matrix& m : cases) {
        CHECK(matrix_from_csv(matrix_to_csv(m)) == m);
    }
}

TEST_CASE("CSV parser reports malformed input with line numbers") {
    try {
        matrix_from_csv("1,2\n3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    try {
        matrix_from_csv("1,2\n3,x\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(matrix_from_csv(""), ParseError);
    CHECK_THROWS_AS(matrix_from_csv("1,,2\n"), ParseError);

    // CRLF and blank lines are tolerated.
    CHECK(matrix_from_csv("1,2\r\n3,4\r\n\n") == Matrix::from_rows({{1, 2}, {3, 4}}));
}

TEST_CASE("PGM render maps the alphabet onto the gray range") {
    const RenderSpec spec{RenderFormat::Pgm, 0, 255, -1.0, 1.0};
    CHECK(matrix_to_pgm(gen_checkered(2, 2, plus_minus()), spec) ==
          "P2\n2 2\n255\n255 0\n0 255\n");

    const std::string pgm =
        matrix_to_pgm(gen_checkered(30, 30, plus_minus()), spec);
    CHECK(pgm.substr(0, 13) == "P2\n30 30\n255\n");

    RenderSpec bad = spec;
    bad.gray_high = bad.gray_low;
    CHECK_THROWS_AS(matrix_to_pgm(gen_ones(2, 2), bad), ArgumentError);
    bad = spec;
    bad.hi = bad.lo;
    CHECK_THROWS_AS(matrix_to_pgm(gen_ones(2, 2), bad), ArgumentError);
}

TEST_CASE("ASCII render uses block and dot glyphs") {
    const RenderSpec spec{RenderFormat::Ascii, 0, 255, -1.0, 1.0};
    CHECK(matrix_to_ascii(gen_checkered(2, 2, plus_minus()), spec) ==
          "█ ·\n· █\n");
}

TEST_CASE("auto_render_spec widens degenerate ranges") {
    const RenderSpec spec = auto_render_spec(Matrix(3, 3, 0.5), RenderFormat::Pgm);
    CHECK(spec.lo < spec.hi);
    CHECK(spec.lo < 0.5);
    CHECK(spec.hi > 0.5);
}

TEST_CASE("JSON reports are deterministic and carry the documented fields") {
    const RankReport report = rank_gauss(gen_checkered(4, 5, zero_one()), 1e-10);
    const std::string json = rank_report_to_json(report);
    CHECK(json == rank_report_to_json(report));
    CHECK(json.find("\"rank\": 2") != std::string::npos);
    CHECK(json.find("\"pivots\"") != std::string::npos);
    CHECK(json.find("\"tolerance\"") != std::string::npos);

    const std::string svd_json = svd_result_to_json(svd_jacobi(gen_ones(2, 3)));
    CHECK(svd_json.find("\"singular_values\"") != std::string::npos);
    CHECK(svd_json.find("\"u\"") != std::string::npos);
    CHECK(svd_json.find("\"v\"") != std::string::npos);
}

TEST_CASE("alphabet and phase names round trip") {
    CHECK(alphabet_name(parse_alphabet("zero-one")) == "zero-one");
    CHECK(alphabet_name(parse_alphabet("plus-minus")) == "plus-minus");
    CHECK(parse_phase("low-first") == Phase::LowFirst);
    CHECK(phase_name(parse_phase("high-first")) == "high-first");
    CHECK_THROWS_AS(parse_alphabet("ternary"), ArgumentError);
    CHECK_THROWS_AS(parse_phase("sideways"), ArgumentError);
}

TEST_CASE("bench table serialization") {
    BenchRow row;
    row.rows = 30;
    row.cols = 30;
    row.rank = 1;
    row.structured_flops = 90;
    row.dense_flops = 1770;
    row.ratio = 90.0 / 1770.0;
    row.median_ns_structured = 1234;
    row.median_ns_dense = 5678;
    const std::string csv = bench_table_to_csv({row});
    CHECK(csv.find("size,rank,structured_flops,dense_flops,ratio,median_ns_structured,"
                   "median_ns_dense\n") == 0);
    CHECK(csv.find("30x30,1,90,1770,") != std::string::npos);
    CHECK(bench_table_to_csv({}).find("size,rank") == 0);

    const std::string text = bench_table_to_text({row});
    CHECK(text.find("30x30") != std::string::npos);
}
