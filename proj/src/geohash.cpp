#include "kcmpc/geohash.hpp"
#include "kcmpc/constants.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace kcmpc {

FaceHashParams::FaceHashParams(std::size_t dim, double b, double l, double c)
    : d(dim), beta(b), ell(l), c_hash(c) {
    if (d == 0 || d > 64) throw usage_error("face hash dimension must be in 1..64");
    if (!(beta > 0) || !(ell > 0)) throw usage_error("face hash beta and ell must be positive");
    const double floor_ell = c_hash * std::pow(static_cast<double>(d), 1.5) * beta;
    if (ell < floor_ell * (1.0 - 1e-12))
        throw usage_error("face hash requires ell >= c_hash * d^1.5 * beta = " +
                          std::to_string(floor_ell));
}

bool FaceHashParams::annulus_applicable(double tau) const {
    return z() > 4.0 * (static_cast<double>(d) * beta + tau);
}

bool BucketId::operator<(const BucketId& o) const {
    if (level != o.level) return level < o.level;
    if (axis_mask != o.axis_mask) return axis_mask < o.axis_mask;
    return cell < o.cell;
}

std::uint64_t BucketId::key64() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    };
    mix(level);
    mix(axis_mask);
    for (long long c : cell) mix(static_cast<std::uint64_t>(c));
    return h;
}

std::string BucketId::to_string() const {
    std::ostringstream os;
    os << "L" << level << "/m" << axis_mask << "/(";
    for (std::size_t i = 0; i < cell.size(); ++i) os << (i ? "," : "") << cell[i];
    os << ")";
    return os.str();
}

BucketId face_hash(const Point& x, const FaceHashParams& p) {
    if (x.size() != p.d) throw usage_error("face hash dimension mismatch");
    const std::size_t d = p.d;
    const double z = p.z();

    // Signed offset to the nearest z-multiple, half-open toward +inf so a
    // coordinate sitting exactly at width distance above a hyperplane does
    // NOT count as pinned while one exactly below does. This makes bucket
    // boundaries half-open and the assignment total and consistent.
    std::vector<long long> nearest(d), cell_floor(d);
    std::vector<double> off(d);
    for (std::size_t j = 0; j < d; ++j) {
        nearest[j] = static_cast<long long>(std::floor(x[j] / z + 0.5));
        off[j] = x[j] - static_cast<double>(nearest[j]) * z;
        cell_floor[j] = static_cast<long long>(std::floor(x[j] / z));
    }

    for (std::uint32_t i = 0; i < d; ++i) {
        const double w = p.level_width(i);
        std::uint64_t mask = 0;
        std::size_t count = 0;
        for (std::size_t j = 0; j < d; ++j)
            if (off[j] >= -w && off[j] < w) {
                mask |= (std::uint64_t{1} << j);
                ++count;
            }
        if (count >= d - i) {
            // at the minimal level exactly d-i axes qualify, so the mask
            // pins the containing face uniquely
            BucketId id;
            id.level = i;
            id.axis_mask = mask;
            id.cell.resize(d);
            for (std::size_t j = 0; j < d; ++j)
                id.cell[j] = (mask >> j & 1) ? nearest[j] : cell_floor[j];
            return id;
        }
    }

    BucketId id; // remainder: full-cell bucket
    id.level = static_cast<std::uint32_t>(d);
    id.axis_mask = 0;
    id.cell = std::move(cell_floor);
    return id;
}

BucketId shifted_hash(const Point& x, const Point& v, const FaceHashParams& p) {
    if (v.size() != x.size()) throw usage_error("shift vector dimension mismatch");
    Point y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] + v[j];
    return face_hash(y, p);
}

std::size_t bucket_group(const BucketId& id) { return id.level; }

Point representative_point(const BucketId& id, const FaceHashParams& p) {
    if (id.cell.size() != p.d) throw usage_error("bucket id dimension mismatch");
    const double z = p.z();
    Point q(p.d);
    // pinned axes sit on the face itself; free axes take the low cell corner,
    // which is the lexicographically smallest corner of the face
    for (std::size_t j = 0; j < p.d; ++j)
        q[j] = static_cast<double>(id.cell[j]) * z;
    return q;
}

ConsistentHashParams::ConsistentHashParams(std::size_t dim, double g, double l, double c_lam)
    : d(dim), gamma(g), ell(l), c_lambda(c_lam) {
    if (d == 0 || d > 64) throw usage_error("consistent hash dimension must be in 1..64");
    const double hi = std::max(8.0, 2.0 * static_cast<double>(d));
    if (gamma < 8.0 || gamma > hi)
        throw usage_error("gamma must lie in [8, max(8, 2d)]");
    if (!(ell > 0)) throw usage_error("ell must be positive");
    if (!(c_lambda > 0)) throw usage_error("c_lambda must be positive");
}

double ConsistentHashParams::lambda() const {
    const double dd = static_cast<double>(d);
    return std::exp(8.0 * dd / gamma) * c_lambda * dd * std::max(1.0, std::log(dd));
}

FaceHashParams ConsistentHashParams::face_params() const {
    const double beta = ell / (constants::c_hash * std::pow(static_cast<double>(d), 1.5));
    return FaceHashParams(d, beta, ell, constants::c_hash);
}

BucketId consistent_hash(const Point& x, const ConsistentHashParams& params) {
    return face_hash(x, params.face_params());
}

bool annulus_free_region_check(const FaceHashParams& p, double tau,
                               std::size_t sample_count, std::uint64_t seed) {
    if (tau < 0) throw usage_error("tau must be nonnegative");
    if (tau > p.beta) throw usage_error("annulus check requires tau <= beta");
    if (tau == 0) return true;
    const double z = p.z();
    const double b = static_cast<double>(p.d) * p.beta + tau;
    if (!(z > 4.0 * b))
        throw usage_error("annulus window empty: need z > 4(d*beta + tau)");

    std::mt19937_64 rng(seed ^ 0x5bd1e995u);
    std::uniform_int_distribution<int> box(-3, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> jitter(-tau, tau);

    for (std::size_t t = 0; t < sample_count; ++t) {
        Point x(p.d), y(p.d);
        for (std::size_t j = 0; j < p.d; ++j) {
            const double a = static_cast<double>(box(rng));
            const double lo = a * z + 2.0 * b;
            const double hi = (a + 1.0) * z - 2.0 * b;
            x[j] = lo + unit(rng) * (hi - lo);
            y[j] = x[j] + jitter(rng);
        }
        if (!(face_hash(x, p) == face_hash(y, p))) return false;
    }
    return true;
}

} // namespace kcmpc
