#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kcmpc/constants.hpp"
#include "kcmpc/kcenter.hpp"
#include "kcmpc/oracles.hpp"

using namespace kcmpc;

namespace {

Dataset pts(const std::vector<double>& xs) {
    Dataset P;
    for (double x : xs) P.push_back({x});
    return P;
}

MpcConfig big_cfg(std::uint64_t seed = 0) {
    MpcConfig cfg;
    cfg.local_memory_s = 1 << 16;
    cfg.machine_count = 2;
    cfg.seed = seed;
    return cfg;
}

} // namespace

TEST_CASE("mode names round-trip") {
    for (auto m : {KCenterMode::rs_lowdim, KCenterMode::rs_highdim, KCenterMode::mds_bicriteria})
        CHECK(kcenter_mode_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(kcenter_mode_from_string("bogus"), usage_error);
}

TEST_CASE("coarse_opt_estimate structure") {
    // gaps of the projection of {0,1,2,100} scale together, so E' = n * r_k
    // and E = n^3 * E' regardless of the projected direction
    const auto est = coarse_opt_estimate(pts({0, 1, 2, 100}), 2, 5);
    CHECK(est.r_k > 0);
    CHECK(est.E_raw == doctest::Approx(4.0 * est.r_k));
    CHECK(est.E == doctest::Approx(64.0 * est.E_raw));

    const auto est1 = coarse_opt_estimate(pts({0, 10}), 1, 5);
    CHECK(est1.E_raw > 0); // k = 1: max - min of the projection

    CHECK_THROWS_AS(coarse_opt_estimate(pts({0, 0, 1}), 2, 5), usage_error);
}

TEST_CASE("coarse estimate sandwich holds for most seeds") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 10);
    Dataset P;
    for (int i = 0; i < 10; ++i) P.push_back({u(rng), u(rng)});
    const double opt = oracle_kcenter_opt(P, 3);
    const double n7 = std::pow(10.0, 7.0);
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto est = coarse_opt_estimate(P, 3, seed);
        if (!(opt <= est.E && est.E <= kcmpc::constants::c_est * n7 * opt)) ++failures;
    }
    CHECK(failures <= 20); // 2/n with n = 10
}

TEST_CASE("candidate_thresholds") {
    CHECK(candidate_thresholds(8, 1.0, 8.0) == std::vector<double>{1, 2, 4, 8});

    const auto single = candidate_thresholds(5, 0.5, 1.0);
    CHECK(single.size() == 1);

    const auto lst = candidate_thresholds(100, 0.5, 100.0);
    REQUIRE(lst.size() >= 2);
    for (std::size_t i = 1; i < lst.size(); ++i)
        CHECK(lst[i] / lst[i - 1] == doctest::Approx(1.5));
    CHECK(lst.front() >= 1.0 - 1e-9);
    CHECK(lst.back() <= 100.0 + 1e-9);
    CHECK(std::is_sorted(lst.begin(), lst.end()));
}

TEST_CASE("distinct-point shortcut") {
    auto sol = solve_kcenter(pts({0, 10}), 2, 0.3, KCenterMode::rs_lowdim, big_cfg());
    CHECK(sol.cost == 0.0);
    CHECK(sol.centers.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) CHECK(dist(pts({0, 10})[i], sol.centers[sol.assignment[i]]) == 0.0);
}

TEST_CASE("solve_kcenter on {0,2,10}, k=2") {
    const Dataset P = pts({0, 2, 10});
    const double opt = oracle_kcenter_opt(P, 2); // = 1

    auto mds = solve_kcenter(P, 2, 0.3, KCenterMode::mds_bicriteria, big_cfg());
    CHECK(mds.centers.size() <= 2);
    CHECK(mds.cost <= 1.3 * opt + 1e-9);

    auto rs = solve_kcenter(P, 2, 0.3, KCenterMode::rs_lowdim, big_cfg());
    CHECK(rs.centers.size() <= 2);
    CHECK(rs.cost <= 2.6 * opt + 1e-9);
}

TEST_CASE("cost equals the exact max assigned distance") {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0, 8);
    Dataset P;
    for (int i = 0; i < 9; ++i) P.push_back({u(rng), u(rng)});
    for (auto mode : {KCenterMode::rs_lowdim, KCenterMode::mds_bicriteria}) {
        auto sol = solve_kcenter(P, 3, 0.4, mode, big_cfg());
        double worst = 0;
        for (std::size_t i = 0; i < P.size(); ++i)
            worst = std::max(worst, dist(P[i], sol.centers[sol.assignment[i]]));
        CHECK(sol.cost == doctest::Approx(worst));
    }
}

TEST_CASE("approximation guarantees against the oracle over seeds") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0, 10);
    const double eps = 0.3;
    int rs_fail = 0, mds_fail = 0, runs = 0;
    for (int t = 0; t < 30; ++t) {
        Dataset P;
        const int n = 6 + static_cast<int>(rng() % 5);
        for (int i = 0; i < n; ++i) P.push_back({u(rng)});
        const std::size_t k = 2 + rng() % 2;
        const double opt = oracle_kcenter_opt(P, k);
        if (opt <= 1e-9) continue;
        ++runs;

        auto rs = solve_kcenter(P, k, eps, KCenterMode::rs_lowdim, big_cfg(t));
        CHECK(rs.centers.size() <= k);
        if (rs.cost > (2 + 3 * eps) * opt + 1e-9) ++rs_fail;

        auto mds = solve_kcenter(P, k, eps, KCenterMode::mds_bicriteria, big_cfg(t));
        CHECK(static_cast<double>(mds.centers.size()) <= std::ceil((1 + eps) * k) + 1e-9);
        if (mds.cost > (1 + 3 * eps) * opt + 1e-9) ++mds_fail;
    }
    REQUIRE(runs >= 20);
    CHECK(rs_fail * 5 <= runs);  // well under the 2/n tolerance
    CHECK(mds_fail * 5 <= runs);
}

TEST_CASE("assign_lowdim") {
    const Dataset P = pts({0, 2, 10});
    const Dataset C = pts({1, 10});
    auto a = assign_lowdim(P, C, 1.0, 0.1, big_cfg());
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(dist(P[i], C[a[i]]) <= 1.4);

    // single center
    auto one = assign_lowdim(P, pts({5}), 5.0, 0.1, big_cfg());
    for (std::size_t i = 0; i < 3; ++i) CHECK(one[i] == 0);

    // C contains P: every point ends up within 2 eps tau of its center
    auto self = assign_lowdim(P, P, 1.0, 0.1, big_cfg());
    for (std::size_t i = 0; i < 3; ++i) CHECK(dist(P[i], P[self[i]]) <= 2 * 0.1 * 1.0);
}

TEST_CASE("assign_highdim") {
    Dataset P;
    for (int i = 0; i < 4; ++i) P.push_back({0.1 * i, 0.0});
    for (int i = 0; i < 4; ++i) P.push_back({100.0 + 0.1 * i, 0.0});
    Dataset C;
    C.push_back({0.15, 0.0});
    C.push_back({100.15, 0.0});
    auto a = assign_highdim(P, C, 0.5, 0.5, big_cfg());
    REQUIRE(a.size() == 8);
    for (std::size_t i = 0; i < 4; ++i) CHECK(a[i] == 0);
    for (std::size_t i = 4; i < 8; ++i) CHECK(a[i] == 1);
}

TEST_CASE("rs_highdim mode produces a feasible solution") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, 5);
    Dataset P;
    for (int i = 0; i < 10; ++i) P.push_back({u(rng), u(rng)});
    auto sol = solve_kcenter(P, 3, 0.5, KCenterMode::rs_highdim, big_cfg());
    CHECK(sol.centers.size() <= 3);
    CHECK(sol.assignment.size() == P.size());
    CHECK(sol.cost >= 0.0);
}
