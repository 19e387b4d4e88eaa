#include "kcmpc/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

namespace kcmpc {

namespace {

void check_budget(const Dataset& P, const OracleBudget& b, const char* who) {
    if (P.size() > b.max_n)
        throw usage_error(std::string(who) + ": refusing n=" + std::to_string(P.size()) +
                          " > oracle budget " + std::to_string(b.max_n));
    if (P.dim() > b.max_d)
        throw usage_error(std::string(who) + ": refusing d=" + std::to_string(P.dim()) +
                          " > oracle budget " + std::to_string(b.max_d));
}

std::vector<double> subset_meb_radii(const Dataset& P) {
    const std::size_t n = P.size();
    std::vector<double> r(std::size_t{1} << n, 0.0);
    std::vector<Point> buf;
    for (std::size_t mask = 1; mask < r.size(); ++mask) {
        buf.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) buf.push_back(P[i]);
        r[mask] = min_enclosing_ball(std::span<const Point>(buf)).radius;
    }
    return r;
}

} // namespace

std::size_t oracle_mds_size(const Dataset& P, double tau, const OracleBudget& budget) {
    check_budget(P, budget, "oracle_mds_size");
    if (P.empty()) return 0;
    if (tau < 0) throw usage_error("oracle_mds_size: tau must be nonnegative");
    const std::size_t n = P.size();
    const auto radii = subset_meb_radii(P);
    const std::size_t full = (std::size_t{1} << n) - 1;
    const std::size_t INF = n + 1;
    std::vector<std::size_t> cover(full + 1, INF);
    cover[0] = 0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const std::size_t low = mask & (~mask + 1);
        // only consider covering subsets that contain the lowest uncovered
        // point; every cover has one, so this loses nothing
        for (std::size_t sub = mask; sub; sub = (sub - 1) & mask) {
            if (!(sub & low)) continue;
            if (radii[sub] <= tau)
                cover[mask] = std::min(cover[mask], cover[mask ^ sub] + 1);
        }
    }
    return cover[full];
}

double oracle_kcenter_opt(const Dataset& P, std::size_t k, const OracleBudget& budget) {
    check_budget(P, budget, "oracle_kcenter_opt");
    if (P.empty()) return 0.0;
    if (k == 0) throw usage_error("oracle_kcenter_opt: k must be positive");
    const std::size_t n = P.size();
    const auto radii = subset_meb_radii(P);
    const std::size_t full = (std::size_t{1} << n) - 1;
    const double INF = std::numeric_limits<double>::infinity();

    // dp[mask] = min over partitions of mask into <= j parts of max MEB radius
    std::vector<double> dp(full + 1, INF), next(full + 1);
    dp[0] = 0.0;
    for (std::size_t j = 0; j < std::min(k, n); ++j) {
        next.assign(full + 1, INF);
        next[0] = 0.0;
        for (std::size_t mask = 1; mask <= full; ++mask) {
            const std::size_t low = mask & (~mask + 1);
            double best = INF;
            for (std::size_t sub = mask; sub; sub = (sub - 1) & mask) {
                if (!(sub & low)) continue;
                const double rest = dp[mask ^ sub];
                if (rest == INF) continue;
                best = std::min(best, std::max(radii[sub], rest));
            }
            next[mask] = best;
        }
        dp.swap(next);
    }
    return dp[full];
}

RulingSetCheck verify_ruling_set(const Dataset& P, const Dataset& S, double tau) {
    for (const auto& s : S.points) {
        bool member = false;
        for (const auto& p : P.points)
            if (p == s) { member = true; break; }
        if (!member) throw usage_error("verify_ruling_set: S must be a subset of P");
    }
    if (S.empty())
        return {true, std::numeric_limits<double>::infinity()};
    bool indep = true;
    for (std::size_t i = 0; i < S.size() && indep; ++i)
        for (std::size_t j = i + 1; j < S.size(); ++j)
            if (dist(S[i], S[j]) <= tau) { indep = false; break; }
    double rad = 0.0;
    for (const auto& p : P.points) rad = std::max(rad, dist_to_set(p, S));
    return {indep, rad};
}

std::size_t oracle_max_independent(const Dataset& P, double radius,
                                   const OracleBudget& budget) {
    check_budget(P, budget, "oracle_max_independent");
    const std::size_t n = P.size();
    // adjacency of the "too close" graph; independent sets avoid its edges
    std::vector<std::size_t> close(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && dist(P[i], P[j]) <= radius) close[i] |= std::size_t{1} << j;
    std::size_t best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            if ((mask >> i & 1) && (mask & close[i])) ok = false;
        if (ok) best = std::max(best, static_cast<std::size_t>(std::popcount(mask)));
    }
    return best;
}

} // namespace kcmpc
