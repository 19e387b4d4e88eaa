#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "kcmpc/geometry.hpp"

namespace kcmpc {

/// Parameters of the face-based geometric hash. Space is cut by the z-grid
/// (z = ell/sqrt(d)); points near i-dimensional grid faces hash to that face,
/// with per-level widths ell_i = (d-i)*beta shrinking as faces get larger.
struct FaceHashParams {
    std::size_t d;
    double beta;
    double ell;
    double c_hash = 3.0;

    FaceHashParams(std::size_t dim, double b, double l, double c = 3.0);

    double z() const { return ell / std::sqrt(static_cast<double>(d)); }
    double level_width(std::size_t i) const { return static_cast<double>(d - i) * beta; }

    /// True iff L(z, 2b)^d with b = d*beta + tau is nonempty, i.e. z > 4b.
    /// Not required for plain hashing, only for the annulus-free guarantee.
    bool annulus_applicable(double tau) const;
};

/// Canonical bucket id: group level in 0..d, bitmask of the axes pinned to
/// grid hyperplanes, then one lattice coordinate per axis (nearest-multiple
/// index for pinned axes, floor cell index for free axes).
struct BucketId {
    std::uint32_t level = 0;
    std::uint64_t axis_mask = 0;
    std::vector<long long> cell;

    bool operator==(const BucketId&) const = default;
    bool operator<(const BucketId& o) const;

    /// Stable 64-bit digest for use as an MPC shuffle key. Collisions only
    /// co-locate buckets; logic always compares full ids.
    std::uint64_t key64() const;

    std::string to_string() const;
};

BucketId face_hash(const Point& x, const FaceHashParams& params);

/// f_v(x) := f(x + v).
BucketId shifted_hash(const Point& x, const Point& v, const FaceHashParams& params);

/// Group index of the bucket (its level). Buckets within one group are
/// pairwise more than beta apart in l-infinity.
std::size_t bucket_group(const BucketId& id);

/// Lexicographically smallest corner of the bucket's defining face;
/// computable from (id, params) alone.
Point representative_point(const BucketId& id, const FaceHashParams& params);

/// Gamma-gap consistent hashing: same-bucket diameter <= ell, and any set of
/// diameter <= ell/Gamma touches at most lambda() buckets. Realized by the
/// face hash with beta = ell / (c_hash * d^1.5).
struct ConsistentHashParams {
    std::size_t d;
    double gamma;
    double ell;
    double c_lambda;

    ConsistentHashParams(std::size_t dim, double g, double l, double c_lam);

    double lambda() const;
    FaceHashParams face_params() const;
};

BucketId consistent_hash(const Point& x, const ConsistentHashParams& params);

/// Samples x from L(z, 2b)^d (b = d*beta + tau) and y with ||x-y||_inf <= tau,
/// and checks that every sampled pair lands in one bucket: the tau-annulus of
/// every bucket misses L(z, 2b)^d entirely, so such x sit in bucket interiors.
bool annulus_free_region_check(const FaceHashParams& params, double tau,
                               std::size_t sample_count, std::uint64_t seed = 0);

} // namespace kcmpc
