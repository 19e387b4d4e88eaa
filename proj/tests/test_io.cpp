#include <doctest.h>

#include "kcmpc/io.hpp"

using namespace kcmpc;

TEST_CASE("parse_points_text happy path") {
    const auto P = parse_points_text("0,0\n3,4\n", "test");
    REQUIRE(P.size() == 2);
    CHECK(P.dim() == 2);
    CHECK(P[1] == Point{3, 4});

    // whitespace separation and blank lines
    const auto Q = parse_points_text("1 2\n\n  3\t4  \n", "test");
    CHECK(Q.size() == 2);

    // scientific notation and negatives
    const auto R = parse_points_text("-1.5e2, 0.25\n", "test");
    CHECK(R[0] == Point{-150.0, 0.25});
}

TEST_CASE("parse_points_text rejects bad input with line numbers") {
    CHECK_THROWS_WITH_AS(parse_points_text("1\n2 3\n", "f"),
                         doctest::Contains("f:2"), usage_error);
    CHECK_THROWS_WITH_AS(parse_points_text("nan,0\n", "f"),
                         doctest::Contains("non-finite"), usage_error);
    CHECK_THROWS_WITH_AS(parse_points_text("1,abc\n", "f"),
                         doctest::Contains("abc"), usage_error);
    CHECK_THROWS_AS(parse_points_text("", "f"), usage_error);
}

TEST_CASE("ingest_points reports missing files") {
    CHECK_THROWS_AS(ingest_points("/nonexistent/file.csv"), usage_error);
}
