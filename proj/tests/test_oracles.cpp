#include <doctest.h>

#include <cmath>
#include <random>

#include "kcmpc/oracles.hpp"

using namespace kcmpc;

namespace {
Dataset pts(const std::vector<double>& xs) {
    Dataset P;
    for (double x : xs) P.push_back({x});
    return P;
}
}

TEST_CASE("oracle_mds_size basics") {
    CHECK(oracle_mds_size(pts({0, 1, 2}), 1.0) == 1);
    CHECK(oracle_mds_size(pts({0, 3}), 1.0) == 2);
    CHECK(oracle_mds_size(pts({5}), 0.1) == 1);
}

TEST_CASE("oracle_kcenter_opt basics") {
    CHECK(oracle_kcenter_opt(pts({0, 2, 10}), 2) == doctest::Approx(1.0));
    CHECK(oracle_kcenter_opt(pts({0, 2, 10}), 3) == doctest::Approx(0.0));
    CHECK(oracle_kcenter_opt(pts({0, 2}), 1) == doctest::Approx(1.0));
}

TEST_CASE("oracle budget refusal") {
    std::vector<double> xs(13);
    for (int i = 0; i < 13; ++i) xs[i] = i;
    CHECK_THROWS_AS(oracle_mds_size(pts(xs), 1.0), usage_error);
    CHECK_THROWS_AS(oracle_kcenter_opt(pts(xs), 2), usage_error);
}

TEST_CASE("verify_ruling_set") {
    const Dataset P = pts({0, 1, 2});
    const auto r = verify_ruling_set(P, pts({0, 2}), 1.0);
    CHECK(r.is_independent);
    CHECK(r.domination_radius == doctest::Approx(1.0));

    const auto all = verify_ruling_set(P, P, 1.0);
    CHECK_FALSE(all.is_independent); // 0 and 1 are only 1 apart, not > 1
    CHECK(all.domination_radius == 0.0);

    const auto empty = verify_ruling_set(P, Dataset{}, 1.0);
    CHECK(std::isinf(empty.domination_radius));

    CHECK_THROWS_AS(verify_ruling_set(P, pts({7}), 1.0), usage_error); // not a subset
}

TEST_CASE("cross-consistency and monotonicity on random instances") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0, 10);
    for (int t = 0; t < 40; ++t) {
        Dataset P;
        const int n = 2 + static_cast<int>(rng() % 7);
        const int d = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i) {
            Point p(d);
            for (auto& x : p) x = u(rng);
            P.push_back(std::move(p));
        }
        const std::size_t k = 1 + rng() % 3;
        const double opt = oracle_kcenter_opt(P, k);
        CHECK(oracle_mds_size(P, opt * (1 + 1e-9)) <= k);
        if (opt > 1e-9) CHECK(oracle_mds_size(P, opt * (1 - 1e-6)) > k);

        // monotone in tau and k
        CHECK(oracle_mds_size(P, 1.0) >= oracle_mds_size(P, 2.0));
        CHECK(oracle_kcenter_opt(P, k) >= oracle_kcenter_opt(P, k + 1));

        // any 2*mu-independent subset has <= k points when mu >= OPT
        CHECK(oracle_max_independent(P, 2 * opt) <= k);
    }
}
