#include <doctest.h>

#include "qmc/io.hpp"
#include "test_util.hpp"

using namespace qmc;

TEST_SUITE("io") {

TEST_CASE("complex parsing") {
    CHECK(io::parse_complex("0.4") == Complex(0.4, 0));
    CHECK(io::parse_complex("-1.5") == Complex(-1.5, 0));
    CHECK(io::parse_complex("2i") == Complex(0, 2));
    CHECK(io::parse_complex("-i") == Complex(0, -1));
    CHECK(io::parse_complex("0.3+0.1i") == Complex(0.3, 0.1));
    CHECK(io::parse_complex("1.5e-2-2e-1i") == Complex(0.015, -0.2));
    CHECK(io::parse_complex(" 1 + 2i ") == Complex(1, 2));
    CHECK_THROWS_AS(io::parse_complex("zz"), ArgumentError);
    CHECK_THROWS_AS(io::parse_complex("1+2+3i"), ArgumentError);
}

TEST_CASE("tuple documents round-trip exactly") {
    auto gen = testutil::rng(149);
    std::vector<Complex> poles{Complex(0, 0), Complex(0.9, 0.33), Complex(-1.2, 0.08)};
    std::vector<CMatrix> mats{testutil::random_matrix(gen, 2, 2),
                              testutil::random_matrix(gen, 2, 2),
                              testutil::random_matrix(gen, 2, 2)};
    SystemTuple t(QBase(Complex(0.4, 0.02)), poles, mats);
    SystemTuple back = io::tuple_from_json(io::tuple_to_json(t, "roundtrip"));
    CHECK(back.q == t.q);
    for (std::size_t i = 0; i < poles.size(); ++i) {
        CHECK(back.poles[i] == t.poles[i]);
        CHECK(back.matrices[i] == t.matrices[i]);
    }
}

TEST_CASE("malformed documents raise ArgumentError") {
    CHECK_THROWS_AS(io::tuple_from_json("not json"), ArgumentError);
    CHECK_THROWS_AS(io::tuple_from_json("{\"schema_version\":\"2\"}"), ArgumentError);
    CHECK_THROWS_AS(
        io::tuple_from_json(
            "{\"schema_version\":\"1\",\"q\":{\"re\":0.4,\"im\":0},"
            "\"poles\":[{\"re\":1,\"im\":0}],"
            "\"matrices\":[[[{\"re\":1,\"im\":0}]]]}"),
        ArgumentError);  // b_0 must be zero
    CHECK_THROWS_AS(io::load_tuple("/nonexistent/path.json"), ArgumentError);
}

}  // TEST_SUITE
