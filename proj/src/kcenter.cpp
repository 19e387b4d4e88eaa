#include "kcmpc/kcenter.hpp"
#include "kcmpc/constants.hpp"
#include "kcmpc/geohash.hpp"
#include "kcmpc/highdim_rs.hpp"
#include "kcmpc/lowdim_mds.hpp"
#include "kcmpc/lowdim_rs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>

namespace kcmpc {

std::string to_string(KCenterMode m) {
    switch (m) {
        case KCenterMode::rs_lowdim: return "rs-lowdim";
        case KCenterMode::rs_highdim: return "rs-highdim";
        case KCenterMode::mds_bicriteria: return "mds";
    }
    return "?";
}

KCenterMode kcenter_mode_from_string(const std::string& s) {
    if (s == "rs-lowdim") return KCenterMode::rs_lowdim;
    if (s == "rs-highdim") return KCenterMode::rs_highdim;
    if (s == "mds") return KCenterMode::mds_bicriteria;
    throw usage_error("unknown k-center mode '" + s + "' (rs-lowdim, rs-highdim, mds)");
}

OptEstimate coarse_opt_estimate(const Dataset& P, std::size_t k, std::uint64_t seed) {
    if (k == 0) throw usage_error("coarse_opt_estimate: k must be positive");
    std::vector<Point> sorted = P.points;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() <= k)
        throw usage_error("coarse_opt_estimate: needs more than k distinct points");

    const std::size_t n = P.size();
    const std::size_t d = P.dim();
    std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Point v(d);
    for (auto& c : v) c = gauss(rng);

    std::vector<double> proj;
    proj.reserve(n);
    for (const auto& p : P.points) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) s += p[j] * v[j];
        proj.push_back(s);
    }
    std::sort(proj.begin(), proj.end());

    OptEstimate est;
    est.projection_seed = seed;
    if (k == 1) {
        est.r_k = 0.0;
        est.E_raw = proj.back() - proj.front();
    } else {
        std::vector<double> gaps;
        for (std::size_t i = 1; i < proj.size(); ++i) gaps.push_back(proj[i] - proj[i - 1]);
        std::sort(gaps.begin(), gaps.end(), std::greater<>());
        est.r_k = gaps[k - 1];
        est.E_raw = static_cast<double>(n) * est.r_k;
    }
    const double n3 = std::pow(static_cast<double>(n), 3.0);
    est.E = constants::c3 * n3 * est.E_raw;
    return est;
}

std::vector<double> candidate_thresholds(double E, double eps, double alpha) {
    if (!(E > 0)) throw usage_error("candidate_thresholds: E must be positive");
    if (!(eps > 0)) throw usage_error("candidate_thresholds: eps must be positive");
    if (!(alpha >= 1)) throw usage_error("candidate_thresholds: alpha must be >= 1");
    const double step = std::log1p(eps);
    const auto i_hi = static_cast<long long>(std::floor(std::log(E) / step + 1e-9));
    const auto i_lo = static_cast<long long>(std::ceil(std::log(E / alpha) / step - 1e-9));
    std::vector<double> out;
    if (i_lo > i_hi) {
        out.push_back(std::pow(1.0 + eps, static_cast<double>(i_hi)));
        return out;
    }
    for (long long i = i_lo; i <= i_hi; ++i)
        out.push_back(std::pow(1.0 + eps, static_cast<double>(i)));
    return out;
}

namespace {

std::pair<std::vector<std::size_t>, ResourceReport>
assign_lowdim_metered(const Dataset& P, const Dataset& C, double tau, double eps,
                      const MpcConfig& cfg) {
    if (C.empty()) throw usage_error("assign_lowdim: empty center set");
    if (!(tau > 0)) throw usage_error("assign_lowdim: tau must be positive");
    if (!(eps > 0 && eps < 1)) throw usage_error("assign_lowdim: eps must be in (0,1)");
    const std::size_t d = P.dim();
    const GridSpec grid(eps * tau / std::sqrt(static_cast<double>(d)));

    std::vector<Point> snapped_c;
    for (const auto& c : C.points) snapped_c.push_back(snap_to_grid(c, grid));
    std::vector<std::size_t> assign(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        const Point sp = snap_to_grid(P[i], grid);
        std::size_t best = 0;
        double bd = dist(sp, snapped_c[0]);
        for (std::size_t j = 1; j < snapped_c.size(); ++j) {
            const double dd = dist(sp, snapped_c[j]);
            if (dd < bd) { bd = dd; best = j; }
        }
        assign[i] = best;
    }

    // metered shape: centers reach every machine in sqrt(s)-sized pieces,
    // then assignment is a pure local pass over the owned points
    MpcComputation comp(P, cfg);
    std::vector<std::size_t> own(comp.machine_count()), prefix(comp.machine_count() + 1, 0);
    for (std::size_t m = 0; m < comp.machine_count(); ++m) {
        own[m] = comp.machine(m).size();
        prefix[m + 1] = prefix[m] + own[m];
    }
    const auto chunk = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(cfg.local_memory_s)))));
    for (const auto& c : C.points)
        for (std::size_t off = 0; off < c.size(); off += chunk) {
            Record r;
            r.payload.assign(c.begin() + static_cast<long>(off),
                             c.begin() + static_cast<long>(std::min(off + chunk, c.size())));
            comp.broadcast(r);
        }
    comp.local_map([&](std::size_t m, const std::vector<Record>& in) {
        std::vector<Record> out;
        for (std::size_t i = 0; i < own[m] && i < in.size(); ++i)
            out.push_back(Record{{static_cast<double>(assign[prefix[m] + i])}});
        return out;
    });
    return {std::move(assign), comp.report()};
}

std::pair<std::vector<std::size_t>, ResourceReport>
assign_highdim_metered(const Dataset& P, const Dataset& C, double tau, double eps,
                       const MpcConfig& cfg) {
    if (C.empty()) throw usage_error("assign_highdim: empty center set");
    if (!(tau > 0)) throw usage_error("assign_highdim: tau must be positive");
    if (!(eps > 0 && eps < 1)) throw usage_error("assign_highdim: eps must be in (0,1)");
    const std::size_t d = P.dim();
    const double r = 4.0 * tau;
    const double beta = std::max(1.0, constants::c_agg / eps);
    const double gamma = consistent_gamma(d, P.size() + C.size());
    ConsistentHashParams hash(d, gamma, beta * gamma * r, constants::c_lambda);

    std::map<BucketId, std::vector<std::size_t>> center_buckets;
    for (std::size_t j = 0; j < C.size(); ++j)
        center_buckets[consistent_hash(C[j], hash)].push_back(j);

    std::vector<std::size_t> assign(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        std::size_t best = SIZE_MAX;
        for (std::size_t j = 0; j < C.size(); ++j)
            if (dist(P[i], C[j]) <= r)
                for (std::size_t cj : center_buckets.at(consistent_hash(C[j], hash)))
                    best = std::min(best, cj);
        if (best == SIZE_MAX) best = nearest_index(P[i], C); // outside the window
        assign[i] = best;
    }

    MpcComputation comp(P, cfg);
    comp.shuffle_by_key(
        [&](const Record& r2) { return consistent_hash(r2.payload, hash).key64(); });
    return {std::move(assign), comp.report()};
}

} // namespace

std::vector<std::size_t> assign_lowdim(const Dataset& P, const Dataset& C, double tau,
                                       double eps, const MpcConfig& cfg) {
    return assign_lowdim_metered(P, C, tau, eps, cfg).first;
}

std::vector<std::size_t> assign_highdim(const Dataset& P, const Dataset& C, double tau,
                                        double eps, const MpcConfig& cfg) {
    return assign_highdim_metered(P, C, tau, eps, cfg).first;
}

KCenterSolution solve_kcenter(const Dataset& P, std::size_t k, double eps,
                              KCenterMode mode, const MpcConfig& cfg) {
    if (k == 0) throw usage_error("solve_kcenter: k must be positive");
    if (!(eps > 0 && eps < 1)) throw usage_error("solve_kcenter: eps must be in (0,1)");
    if (P.empty()) throw usage_error("solve_kcenter: empty dataset");

    KCenterSolution sol;
    sol.mode = mode;

    // distinct-point shortcut, metered as the sort it is
    MpcComputation shortcut(P, cfg);
    shortcut.sort([](const Record& a, const Record& b) { return a.payload < b.payload; });
    std::vector<Point> distinct;
    for (const auto& r : shortcut.gather()) distinct.push_back(r.payload);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    sol.report = shortcut.report();

    if (distinct.size() <= k) {
        for (auto& p : distinct) sol.centers.push_back(std::move(p));
        sol.assignment.resize(P.size());
        for (std::size_t i = 0; i < P.size(); ++i)
            sol.assignment[i] = static_cast<std::size_t>(
                std::lower_bound(sol.centers.points.begin(), sol.centers.points.end(), P[i]) -
                sol.centers.points.begin());
        sol.cost = 0.0;
        sol.tau_star = 0.0;
        return sol;
    }

    const double eps_i = eps / 8.0; // internal slack so composed factors fit
    const double alpha =
        constants::c_est * std::pow(static_cast<double>(P.size()), 7.0);
    const auto mds_cap = static_cast<std::size_t>(
        std::floor((1.0 + eps) * static_cast<double>(k) + 1e-9));

    struct Attempt {
        bool feasible = false;
        Dataset centers;
        ResourceReport report;
    };

    auto evaluate = [&](double tau) -> Attempt {
        Attempt a;
        switch (mode) {
            case KCenterMode::rs_lowdim: {
                auto [r, rep] = lowdim_ruling_set(P, 2.0 * tau, eps_i, cfg);
                a = {r.selected.size() <= k, std::move(r.selected), rep};
                break;
            }
            case KCenterMode::rs_highdim: {
                auto [r, rep] = highdim_ruling_set(P, 2.0 * tau, eps_i, cfg);
                a = {r.selected.size() <= k, std::move(r.selected), rep};
                break;
            }
            case KCenterMode::mds_bicriteria: {
                auto [r, rep] = approx_mds(P, tau, eps_i, cfg);
                a = {r.size <= mds_cap, std::move(r.centers), rep};
                break;
            }
        }
        return a;
    };

    // threshold search: every tau >= OPT is feasible (independent sets of
    // radius 2*tau have <= k points; MDS sizes only shrink), so the smallest
    // feasible grid value sits next to an infeasible one below OPT and a
    // monotone bisection over Z finds it without solving all |Z| thresholds
    std::optional<double> tau_star;
    Dataset centers;
    ResourceReport search_report;
    bool have_search_report = false;

    for (int attempt = 0; attempt < 2 && !tau_star; ++attempt) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(attempt);
        OptEstimate est;
        try {
            est = coarse_opt_estimate(P, k, seed);
        } catch (const usage_error&) {
            break;
        }
        // estimator pass is a projection plus a global sort
        {
            MpcComputation comp(P, cfg);
            comp.sort([](const Record& a, const Record& b) { return a.payload < b.payload; });
            if (!have_search_report) {
                search_report = comp.report();
                have_search_report = true;
            } else {
                search_report.merge_sequential(comp.report());
            }
        }
        if (!(est.E > 0) || !std::isfinite(est.E)) continue;

        const auto Z = candidate_thresholds(est.E, eps_i, alpha);
        std::vector<std::optional<Attempt>> cache(Z.size());
        auto get = [&](std::size_t i) -> Attempt& {
            if (!cache[i]) cache[i] = evaluate(Z[i]);
            return *cache[i];
        };

        if (!get(Z.size() - 1).feasible) {
            for (auto& c : cache)
                if (c) search_report.merge_parallel(c->report);
            continue; // estimate too low; reseed once
        }
        std::size_t idx;
        if (get(0).feasible) {
            idx = 0;
        } else {
            std::size_t lo = 0, hi = Z.size() - 1;
            while (hi - lo > 1) {
                const std::size_t mid = lo + (hi - lo) / 2;
                (get(mid).feasible ? hi : lo) = mid;
            }
            idx = hi;
        }
        ResourceReport thresholds;
        bool first = true;
        for (auto& c : cache)
            if (c) {
                if (first) { thresholds = c->report; first = false; }
                else thresholds.merge_parallel(c->report);
            }
        search_report.merge_sequential(thresholds);
        tau_star = Z[idx];
        centers = std::move(get(idx).centers);
    }

    if (!tau_star)
        throw estimator_error("solve_kcenter: no feasible threshold even after reseeding; "
                              "the coarse estimate missed OPT");

    sol.report.merge_sequential(search_report);
    sol.tau_star = *tau_star;
    sol.centers = std::move(centers);

    auto [assignment, arep] =
        mode == KCenterMode::rs_highdim
            ? assign_highdim_metered(P, sol.centers, sol.tau_star, eps_i, cfg)
            : assign_lowdim_metered(P, sol.centers, sol.tau_star, eps_i, cfg);
    sol.assignment = std::move(assignment);
    sol.report.merge_sequential(arep);

    sol.cost = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
        sol.cost = std::max(sol.cost, dist(P[i], sol.centers[sol.assignment[i]]));
    return sol;
}

} // namespace kcmpc
