#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "kcmpc/constants.hpp"
#include "kcmpc/geohash.hpp"

using namespace kcmpc;

TEST_CASE("1d face hash level assignment") {
    const FaceHashParams params(1, 1.0, 10.0); // z = 10
    const auto near0 = face_hash({0.5}, params);
    const auto near0m = face_hash({-0.5}, params);
    CHECK(near0 == near0m);
    CHECK(near0.level == 0);
    CHECK(bucket_group(near0) == 0);

    const auto mid5 = face_hash({5.0}, params);
    const auto mid6 = face_hash({6.0}, params);
    CHECK(mid5 == mid6); // interior bucket [1, 9)
    CHECK(mid5.level == 1);
    CHECK(bucket_group(mid5) == 1);

    CHECK_FALSE(near0 == mid5);
}

TEST_CASE("shifted hash") {
    const FaceHashParams params(1, 1.0, 10.0);
    CHECK(shifted_hash({0.0}, {5.0}, params) == face_hash({5.0}, params));
    CHECK(shifted_hash({0.0}, {5.0}, params).level == 1);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-30, 30);
    const FaceHashParams p2(2, 0.7, 3.0 * std::pow(2.0, 1.5) * 0.7);
    for (int t = 0; t < 500; ++t) {
        Point x{u(rng), u(rng)}, v{u(rng), u(rng)};
        Point xv{x[0] + v[0], x[1] + v[1]};
        CHECK(shifted_hash(x, v, p2) == face_hash(xv, p2));
        CHECK(shifted_hash(x, {0, 0}, p2) == face_hash(x, p2));
    }
}

TEST_CASE("bucket levels stay in range and ids are stable keys") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-40, 40);
    const FaceHashParams params(3, 1.0, 3.0 * std::pow(3.0, 1.5));
    for (int t = 0; t < 2000; ++t) {
        Point x{u(rng), u(rng), u(rng)};
        const auto id = face_hash(x, params);
        CHECK(id.level <= 3);
        CHECK(face_hash(x, params) == id);
        CHECK(face_hash(x, params).key64() == id.key64());
        CHECK(!id.to_string().empty());
        // representative corner is parameter-only and nearby
        const auto rep = representative_point(id, params);
        CHECK(dist_inf(x, rep) <= params.z() + 1e-9);
    }
}

TEST_CASE("face hash invariant checks") {
    CHECK_THROWS_AS(FaceHashParams(1, 1.0, 1.0), usage_error); // ell < c_hash d^1.5 beta
    CHECK_THROWS_AS(FaceHashParams(1, -1.0, 10.0), usage_error);
    CHECK_THROWS_AS(FaceHashParams(0, 1.0, 10.0), usage_error);
}

namespace {

// sampled property harness: same-bucket diameter, same-group separation,
// box consistency
void sample_properties(std::size_t d, double beta, double ell, std::uint64_t seed,
                       int samples) {
    const FaceHashParams params(d, beta, ell);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-4 * ell, 4 * ell);

    std::map<BucketId, Point> seen;
    for (int t = 0; t < samples; ++t) {
        Point x(d);
        for (auto& c : x) c = u(rng);
        const auto id = face_hash(x, params);
        auto [it, fresh] = seen.try_emplace(id, x);
        if (!fresh) CHECK(dist(x, it->second) <= ell + 1e-9); // diameter
    }
    // separation between distinct same-group buckets
    std::vector<std::pair<BucketId, Point>> flat(seen.begin(), seen.end());
    for (std::size_t i = 0; i < flat.size(); ++i)
        for (std::size_t j = i + 1; j < std::min(flat.size(), i + 40); ++j)
            if (flat[i].first.level == flat[j].first.level)
                CHECK(dist_inf(flat[i].second, flat[j].second) > beta);

    // consistency: a set of l-inf diameter <= beta meets at most d+1 buckets
    std::uniform_real_distribution<double> off(0.0, beta);
    for (int t = 0; t < samples / 10; ++t) {
        Point base(d);
        for (auto& c : base) c = u(rng);
        std::set<BucketId> ids;
        for (int q = 0; q < 12; ++q) {
            Point y = base;
            for (auto& c : y) c += off(rng);
            ids.insert(face_hash(y, params));
        }
        CHECK(ids.size() <= d + 1);
    }
}

} // namespace

TEST_CASE("sampled hash properties hold for d in 1..4") {
    for (std::size_t d = 1; d <= 4; ++d) {
        const double beta = 1.0;
        const double ell = kcmpc::constants::c_hash * std::pow(static_cast<double>(d), 1.5) * beta;
        sample_properties(d, beta, ell, 100 + d, 4000);
    }
}

TEST_CASE("annulus-free region check") {
    // needs z > 4(d beta + tau): pick ell large enough
    const std::size_t d = 2;
    const double beta = 1.0, tau = 1.0;
    const double ell = 8.0 * (d + 1) * std::sqrt(static_cast<double>(d)) * beta;
    const FaceHashParams params(d, beta, ell);
    REQUIRE(params.annulus_applicable(tau));
    CHECK(annulus_free_region_check(params, tau, 10000, 1));
    CHECK(annulus_free_region_check(params, 0.0, 100, 1)); // y = x
    CHECK_THROWS_AS(annulus_free_region_check(params, 2.0, 10, 1), usage_error); // tau > beta
}

TEST_CASE("consistent hash params") {
    CHECK_THROWS_AS(ConsistentHashParams(4, 2.0, 10.0, 4.0), usage_error); // gamma < 8
    const ConsistentHashParams ch(4, 8.0, 16.0, 4.0);
    CHECK(ch.lambda() > 0);

    // identical points share a bucket; same-bucket pairs within ell
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-30, 30);
    std::map<BucketId, Point> seen;
    for (int t = 0; t < 4000; ++t) {
        Point x{u(rng), u(rng), u(rng), u(rng)};
        CHECK(consistent_hash(x, ch) == consistent_hash(x, ch));
        const auto id = consistent_hash(x, ch);
        auto [it, fresh] = seen.try_emplace(id, x);
        if (!fresh) CHECK(dist(x, it->second) <= ch.ell + 1e-9);
    }

    // consistency: sets of diameter <= ell/Gamma touch <= Lambda buckets
    std::uniform_real_distribution<double> off(0.0, ch.ell / ch.gamma / 2);
    for (int t = 0; t < 300; ++t) {
        Point base{u(rng), u(rng), u(rng), u(rng)};
        std::set<BucketId> ids;
        for (int q = 0; q < 16; ++q) {
            Point y = base;
            for (auto& c : y) c += off(rng);
            ids.insert(consistent_hash(y, ch));
        }
        CHECK(static_cast<double>(ids.size()) <= ch.lambda());
    }
}
