#include <doctest.h>

#include <random>

#include "kcmpc/geometry.hpp"

using namespace kcmpc;

namespace {
Dataset ds(std::vector<Point> pts) { return Dataset(std::move(pts)); }
}

TEST_CASE("dist basics") {
    CHECK(dist({0}, {2}) == 2.0);
    CHECK(dist({1, 1}, {1, 1}) == 0.0);
    CHECK(dist({0, 0}, {3, 4}) == doctest::Approx(5.0));
    CHECK(dist_inf({0, 0}, {3, 4}) == 4.0);
}

TEST_CASE("ball filtering preserves order") {
    const Dataset P = ds({{0}, {1}, {5}});
    auto B = ball(P, {0}, 1.0);
    REQUIRE(B.size() == 2);
    CHECK(B[0] == Point{0});
    CHECK(B[1] == Point{1});
    CHECK(ball(P, {0}, 0.0).size() == 1);
    CHECK(ball(ds({{0, 0}, {3, 4}}), {0, 0}, 4.9).size() == 1);
}

TEST_CASE("snap_to_grid rounds to nearest multiple, ties toward +inf") {
    const GridSpec g(0.5);
    CHECK(snap_to_grid({0.26}, g) == Point{0.5});
    CHECK(snap_to_grid({-0.4}, g) == Point{-0.5});
    CHECK(snap_to_grid({0.25}, g) == Point{0.5});   // tie goes up
    CHECK(snap_to_grid({-0.25}, g) == Point{-0.0}); // tie goes up
}

TEST_CASE("snap_to_grid moves a point by at most step*sqrt(d)/2") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-50, 50);
    const GridSpec g(0.3);
    for (int t = 0; t < 2000; ++t) {
        Point p{u(rng), u(rng), u(rng)};
        CHECK(dist(p, snap_to_grid(p, g)) <= 0.3 * std::sqrt(3.0) / 2 + 1e-12);
    }
}

TEST_CASE("min_enclosing_ball") {
    const auto b0 = min_enclosing_ball(ds({{0, 0}}));
    CHECK(b0.radius == 0.0);
    CHECK(b0.center == Point{0, 0});

    const auto b1 = min_enclosing_ball(ds({{0, 0}, {2, 0}, {1, 1}}));
    CHECK(b1.radius == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b1.center[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b1.center[1] == doctest::Approx(0.0).epsilon(1e-9));

    CHECK_THROWS_AS(min_enclosing_ball(Dataset{}), usage_error);
}

TEST_CASE("MEB covers all points on random sets") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int t = 0; t < 200; ++t) {
        Dataset S;
        const int n = 1 + static_cast<int>(rng() % 9);
        const int d = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) {
            Point p(d);
            for (auto& x : p) x = u(rng);
            S.push_back(std::move(p));
        }
        const auto b = min_enclosing_ball(S);
        for (const auto& p : S.points)
            CHECK(dist(p, b.center) <= b.radius * (1 + 1e-9) + 1e-9);
    }
}

TEST_CASE("triangle inequality and norm comparison on sampled triples") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int t = 0; t < 1000; ++t) {
        Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
        CHECK(dist(a, c) <= dist(a, b) + dist(b, c) + 1e-12);
        CHECK(dist_inf(a, b) <= dist(a, b) + 1e-12);
        CHECK(dist(a, b) <= std::sqrt(2.0) * dist_inf(a, b) + 1e-12);
    }
}

TEST_CASE("dataset validation") {
    CHECK_THROWS_AS(ds({{0, 0}, {1}}), usage_error);
    CHECK_THROWS_AS(ds({{std::numeric_limits<double>::infinity()}}), usage_error);
    CHECK_THROWS_AS(GridSpec(0.0), usage_error);
}

TEST_CASE("nearest_index breaks ties toward the smaller index") {
    const Dataset C = ds({{0}, {2}});
    CHECK(nearest_index({1}, C) == 0);
    CHECK(nearest_index({1.5}, C) == 1);
    CHECK(dist_to_set({1.5}, C) == 0.5);
}
