#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kcmpc/constants.hpp"
#include "kcmpc/lowdim_rs.hpp"
#include "kcmpc/oracles.hpp"
#include "kcmpc/parallel.hpp"

using namespace kcmpc;

namespace {

Dataset pts(const std::vector<double>& xs) {
    Dataset P;
    for (double x : xs) P.push_back({x});
    return P;
}

Dataset random_points(std::size_t n, std::size_t d, double span, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, span);
    Dataset P;
    for (std::size_t i = 0; i < n; ++i) {
        Point p(d);
        for (auto& x : p) x = u(rng);
        P.push_back(std::move(p));
    }
    return P;
}

std::vector<Point> sorted_points(const Dataset& D) {
    auto v = D.points;
    std::sort(v.begin(), v.end());
    return v;
}

MpcConfig big_cfg() {
    MpcConfig cfg;
    cfg.local_memory_s = 1 << 16;
    cfg.machine_count = 4;
    return cfg;
}

} // namespace

TEST_CASE("round_dataset merges grid-close points only") {
    const double tau = 1.0;
    auto R = round_dataset(pts({0.0, 0.001, 5.0}), tau, 0.5);
    CHECK(R.reps.size() == 2);

    auto Rsame = round_dataset(pts({3.0, 3.0, 3.0}), tau, 0.5);
    CHECK(Rsame.reps.size() == 1);

    // pairwise farther than eps*tau*sqrt(d): nothing merges
    auto Rall = round_dataset(pts({0.0, 1.0, 2.0, 3.0}), tau, 0.5);
    CHECK(Rall.reps.size() == 4);

    CHECK_THROWS_AS(round_dataset(pts({0.0}), 0.0, 0.5), usage_error);
    CHECK_THROWS_AS(round_dataset(pts({0.0}), 1.0, 0.0), usage_error);
}

TEST_CASE("sequential_mis greedy trace") {
    const double tau = 1.0;
    const auto params = mis_hash_params(1, tau);
    auto r = sequential_mis(pts({0.0, 0.5, 2.0}), tau, params);
    CHECK(sorted_points(r.selected) == std::vector<Point>{{0.0}, {2.0}});

    auto single = sequential_mis(pts({7.0}), tau, params);
    CHECK(single.selected.size() == 1);
    CHECK(single.selected[0] == Point{7.0});

    auto spread = sequential_mis(pts({0.0, 2.0, 4.0, 6.0}), tau, params);
    CHECK(spread.selected.size() == 4); // pairwise > tau: everything independent
}

TEST_CASE("localized equals sequential on random instances") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 60; ++t) {
        const std::size_t d = 1 + rng() % 3;
        const double tau = 0.5 + (rng() % 100) / 100.0;
        const auto params = mis_hash_params(d, tau);
        Dataset P = random_points(10 + rng() % 80, d, 20.0 * tau, rng);
        const auto seq = sequential_mis(P, tau, params);
        const auto loc = localized_mis(P, tau, params);
        CHECK(sorted_points(seq.selected) == sorted_points(loc.selected));
    }
}

TEST_CASE("localized equals sequential on grid-boundary adversarial inputs") {
    const double tau = 1.0;
    for (std::size_t d = 1; d <= 2; ++d) {
        const auto params = mis_hash_params(d, tau);
        const double z = params.z();
        Dataset P;
        // points exactly on multiples of z, half-z offsets, and beta edges
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b) {
                Point p;
                p.push_back(a * z);
                if (d == 2) p.push_back(b * z / 2);
                else p.back() += b * 0.25 * tau;
                P.push_back(std::move(p));
            }
        for (double off : {params.level_width(0), -params.level_width(0), tau, z / 2}) {
            Point p(d, off);
            P.push_back(std::move(p));
        }
        const auto seq = sequential_mis(P, tau, params);
        const auto loc = localized_mis(P, tau, params);
        CHECK(sorted_points(seq.selected) == sorted_points(loc.selected));
    }
}

TEST_CASE("far clusters are solved independently by localized_mis") {
    const double tau = 1.0;
    const auto params = mis_hash_params(1, tau);
    const double far_off = 10.0 * relevance_radius(params, tau);
    Dataset A = pts({0.0, 0.4, 1.2});
    Dataset B = pts({far_off, far_off + 0.3, far_off + 2.0});
    Dataset both = A;
    for (const auto& p : B.points) both.push_back(p);

    auto whole = sorted_points(localized_mis(both, tau, params).selected);
    auto pieces = sorted_points(localized_mis(A, tau, params).selected);
    for (const auto& p : localized_mis(B, tau, params).selected.points) pieces.push_back(p);
    std::sort(pieces.begin(), pieces.end());
    CHECK(whole == pieces);
}

TEST_CASE("lowdim_ruling_set certifies both radii") {
    auto [r, rep] = lowdim_ruling_set(pts({0.0, 0.5, 2.0}), 1.0, 0.1, big_cfg());
    const auto check = verify_ruling_set(pts({0.0, 0.5, 2.0}), r.selected, 1.0);
    CHECK(check.is_independent);
    CHECK(r.domination_radius <= 1.2);
    CHECK(r.domination_radius == doctest::Approx(check.domination_radius));
}

TEST_CASE("lowdim_ruling_set on 200 uniform points in [0,10]^2") {
    std::mt19937_64 rng(7);
    Dataset P = random_points(200, 2, 10.0, rng);
    auto [r, rep] = lowdim_ruling_set(P, 1.0, 0.25, big_cfg());
    double min_pair = 1e300;
    for (std::size_t i = 0; i < r.selected.size(); ++i)
        for (std::size_t j = i + 1; j < r.selected.size(); ++j)
            min_pair = std::min(min_pair, dist(r.selected[i], r.selected[j]));
    CHECK(min_pair > 1.0);
    CHECK(r.domination_radius <= 1.5);
}

TEST_CASE("MPC pipeline equals the host-side composition") {
    std::mt19937_64 rng(55);
    for (int t = 0; t < 20; ++t) {
        const std::size_t d = 1 + rng() % 2;
        const double tau = 1.0;
        const double eps = (t % 2) ? 0.25 : 0.5;
        Dataset P = random_points(30 + rng() % 120, d, 15.0, rng);

        auto [mpc_result, rep] = lowdim_ruling_set(P, tau, eps, big_cfg());
        const auto R = round_dataset(P, tau, eps);
        const auto host = sequential_mis(R.reps, tau, mis_hash_params(d, tau));
        CHECK(sorted_points(mpc_result.selected) == sorted_points(host.selected));
    }
}

TEST_CASE("serial and parallel paths are bit-identical") {
    std::mt19937_64 rng(66);
    Dataset P = random_points(300, 2, 25.0, rng);
    const auto params = mis_hash_params(2, 1.0);
    set_parallel(false);
    const auto serial = localized_mis(P, 1.0, params);
    set_parallel(true);
    const auto parallel = localized_mis(P, 1.0, params);
    CHECK(serial.selected.points == parallel.selected.points);
    CHECK(serial.domination_radius == parallel.domination_radius);
}

TEST_CASE("resource metering stays within the pinned budget") {
    std::mt19937_64 rng(77);
    Dataset P = random_points(400, 2, 20.0, rng);
    MpcConfig cfg;
    cfg.local_memory_s = 4096;
    cfg.machine_count = 8;
    auto [r, rep] = lowdim_ruling_set(P, 1.0, 0.5, cfg);
    const double n_units = 400.0 * 2.0;
    const std::size_t logsn = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(std::log(n_units) / std::log(4096.0))));
    CHECK(rep.rounds_used <= kcmpc::constants::c_rounds_lowdim_rs * logsn);
    CHECK(rep.peak_local_memory <= cfg.local_memory_s);
}
