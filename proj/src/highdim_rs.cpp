#include "kcmpc/highdim_rs.hpp"
#include "kcmpc/constants.hpp"
#include "kcmpc/jl.hpp"
#include "kcmpc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace kcmpc {

double consistent_gamma(std::size_t d, std::size_t n) {
    const double dd = static_cast<double>(d);
    const double loglog =
        std::max(1.0, std::log2(std::max(2.0, std::log2(std::max<double>(4.0, static_cast<double>(n))))));
    double g = std::floor(dd / loglog);
    g = std::min(g, 2.0 * dd);
    g = std::max(g, 8.0);
    return std::min(g, std::max(8.0, 2.0 * dd));
}

namespace {

constexpr std::uint64_t LABEL_BOUND = std::uint64_t{1} << 53; // exact as double

std::vector<std::uint64_t> draw_labels(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::uint64_t> dist(0, LABEL_BOUND - 1);
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> out;
    out.reserve(n);
    while (out.size() < n) {
        const std::uint64_t v = dist(rng);
        if (seen.insert(v).second) out.push_back(v);
    }
    return out;
}

RulingSetResult finish_selected(std::vector<Point> selected, const Dataset& domain, double tau) {
    std::sort(selected.begin(), selected.end(), lex_less);
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    RulingSetResult r;
    for (auto& p : selected) r.selected.push_back(std::move(p));
    r.independence_radius = tau;
    r.domination_radius = 0.0;
    for (const auto& p : domain.points)
        r.domination_radius = std::max(r.domination_radius, dist_to_set(p, r.selected));
    return r;
}

} // namespace

LabeledDataset preprocess_reps(const Dataset& P, double tau, double beta,
                               const MpcConfig& cfg) {
    if (!(tau > 0)) throw usage_error("preprocess_reps: tau must be positive");
    if (!(beta >= 1)) throw usage_error("preprocess_reps: beta must be >= 1");
    if (P.empty()) throw usage_error("preprocess_reps: empty dataset");
    const std::size_t d = P.dim();
    const double gamma = consistent_gamma(d, P.size());
    ConsistentHashParams hash(d, gamma, beta * gamma * tau, constants::c_lambda);

    std::map<BucketId, std::size_t> best; // bucket -> index of lex-min member
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto id = consistent_hash(P[i], hash);
        auto it = best.find(id);
        if (it == best.end() || lex_less(P[i], P[it->second])) best[id] = i;
    }

    LabeledDataset L{Dataset{}, {}, {}, hash, tau};
    for (const auto& [id, idx] : best) {
        L.reps.push_back(P[idx]);
        L.origin.push_back(idx);
    }
    L.labels = draw_labels(L.reps.size(), cfg.seed);
    return L;
}

ApproxBallOracle build_approx_ball_oracle(const Dataset& Pp, double tau,
                                          const ConsistentHashParams& hash) {
    if (!(tau > 0)) throw usage_error("approx ball oracle: tau must be positive");
    const std::size_t n = Pp.size();
    std::vector<BucketId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = consistent_hash(Pp[i], hash);
    std::map<BucketId, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < n; ++i) buckets[ids[i]].push_back(i);

    ApproxBallOracle o;
    o.tau = tau;
    o.beta_eff = 1.0 + hash.ell / tau;
    o.neighbors.resize(n);
    parallel_for(n, [&](std::size_t i) {
        std::set<std::size_t> acc;
        for (std::size_t j = 0; j < n; ++j)
            if (dist(Pp[i], Pp[j]) <= tau)
                for (std::size_t k : buckets.at(ids[j])) acc.insert(k);
        o.neighbors[i].assign(acc.begin(), acc.end());
    });
    return o;
}

std::vector<BallMin> approx_ball_min(const LabeledDataset& L, const ApproxBallOracle& oracle) {
    if (oracle.neighbors.size() != L.reps.size())
        throw usage_error("approx_ball_min: oracle built for a different set");
    std::vector<BallMin> out(L.reps.size());
    parallel_for(L.reps.size(), [&](std::size_t i) {
        std::size_t arg = i;
        std::uint64_t best = L.labels[i];
        for (std::size_t j : oracle.neighbors[i])
            if (L.labels[j] < best) { best = L.labels[j]; arg = j; }
        out[i] = {best, arg};
    });
    return out;
}

RulingSetResult one_round_luby(const LabeledDataset& L, const ApproxBallOracle& oracle) {
    const auto mins = approx_ball_min(L, oracle);
    std::vector<Point> selected;
    for (std::size_t i = 0; i < L.reps.size(); ++i)
        if (mins[i].argmin == i) selected.push_back(L.reps[i]);
    return finish_selected(std::move(selected), L.reps, oracle.tau);
}

ChainTrace measure_chain(const LabeledDataset& L, const ApproxBallOracle& oracle,
                         std::size_t start_rep) {
    if (start_rep >= L.reps.size())
        throw usage_error("measure_chain: start index outside the rep set");
    const auto mins = approx_ball_min(L, oracle);
    ChainTrace t;
    std::size_t cur = start_rep;
    t.hops.push_back(cur);
    while (mins[cur].argmin != cur) {
        cur = mins[cur].argmin; // label strictly decreases each hop
        t.hops.push_back(cur);
    }
    return t;
}

std::pair<RulingSetResult, ResourceReport>
highdim_ruling_set(const Dataset& P, double tau, double eps, const MpcConfig& cfg) {
    if (!(tau > 0)) throw usage_error("highdim_ruling_set: tau must be positive");
    if (!(eps > 0 && eps < 1)) throw usage_error("highdim_ruling_set: eps must be in (0,1)");
    if (P.empty()) throw usage_error("highdim_ruling_set: empty dataset");
    const std::size_t n = P.size();
    const std::size_t d = P.dim();

    // JL fires only for genuinely high dimension; selection then runs at a
    // 1.5*tau threshold in the reduced space so that tau-independence on the
    // original points survives (1 +- 1/2) distortion
    const bool use_jl =
        n >= 2 && static_cast<double>(d) > constants::jl_gate * std::log2(static_cast<double>(n));
    Dataset Y = P;
    double tau_sel = tau;
    if (use_jl) {
        const auto dprime = static_cast<std::size_t>(
            std::ceil(constants::jl_density * std::log(static_cast<double>(n))));
        Y = jl_transform(P, dprime, cfg.seed);
        tau_sel = 1.5 * tau;
    }

    const double beta = std::max(1.0, constants::c_agg / eps);
    const LabeledDataset L = preprocess_reps(Y, tau_sel, beta, cfg);
    std::vector<std::uint64_t> label_of_origin_idx(n, 0);
    std::vector<char> is_rep(n, 0);
    for (std::size_t k = 0; k < L.origin.size(); ++k) {
        label_of_origin_idx[L.origin[k]] = L.labels[k];
        is_rep[L.origin[k]] = 1;
    }

    MpcComputation comp(P, cfg);

    // tag with global index and move to reduced coordinates
    std::vector<std::size_t> prefix(comp.machine_count() + 1, 0);
    for (std::size_t m = 0; m < comp.machine_count(); ++m)
        prefix[m + 1] = prefix[m] + comp.machine(m).size();
    comp.local_map([&](std::size_t m, const std::vector<Record>& in) {
        std::vector<Record> out;
        for (std::size_t i = 0; i < in.size(); ++i) {
            const std::size_t idx = prefix[m] + i;
            Record r{Y[idx]};
            r.payload.push_back(static_cast<double>(idx));
            out.push_back(std::move(r));
        }
        return out;
    });

    // co-locate buckets, collapse each to its representative, attach labels
    const auto hash = L.hash;
    auto coords_of = [](const Record& r) {
        return Point(r.payload.begin(), r.payload.end() - 1);
    };
    comp.shuffle_by_key(
        [&](const Record& r) { return consistent_hash(coords_of(r), hash).key64(); });
    comp.local_map([&](std::size_t, const std::vector<Record>& in) {
        std::vector<Record> out;
        for (const auto& r : in) {
            const auto idx = static_cast<std::size_t>(r.payload.back());
            if (!is_rep[idx]) continue;
            Record rep = r;
            rep.payload.push_back(static_cast<double>(label_of_origin_idx[idx]));
            out.push_back(std::move(rep));
        }
        return out;
    });

    // replicate every rep within tau_sel of some locally owned rep
    const std::size_t M = comp.machine_count();
    std::vector<std::vector<std::pair<Point, std::uint64_t>>> owned(M);
    for (std::size_t m = 0; m < M; ++m)
        for (const auto& r : comp.machine(m))
            owned[m].push_back({Point(r.payload.begin(), r.payload.end() - 2),
                                static_cast<std::uint64_t>(r.payload[r.payload.size() - 1])});
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> plan(M);
    for (std::size_t src = 0; src < M; ++src)
        for (std::size_t i = 0; i < owned[src].size(); ++i)
            for (std::size_t dst = 0; dst < M; ++dst) {
                if (dst == src) continue;
                bool needed = false;
                for (const auto& [q, lbl] : owned[dst])
                    if (dist(owned[src][i].first, q) <= tau_sel) { needed = true; break; }
                if (needed) plan[src].push_back({i, dst});
            }
    comp.multicast(plan);

    // local one-round Luby: keep a rep iff it holds the min label in its ball
    comp.local_map([&](std::size_t m, const std::vector<Record>& in) {
        std::vector<Record> out;
        for (const auto& [p, lbl] : owned[m]) {
            bool minimal = true;
            for (const auto& r : in) {
                const Point q(r.payload.begin(), r.payload.end() - 2);
                const auto qlbl = static_cast<std::uint64_t>(r.payload[r.payload.size() - 1]);
                if (dist(p, q) <= tau_sel && qlbl < lbl) { minimal = false; break; }
            }
            if (minimal) {
                Record r{p};
                out.push_back(std::move(r));
            }
        }
        return out;
    });

    // map selected reduced points back to their original points
    std::map<Point, std::size_t> y_to_origin;
    for (std::size_t k = 0; k < L.origin.size(); ++k) y_to_origin[L.reps[k]] = L.origin[k];
    std::vector<Point> selected;
    for (const auto& r : comp.gather()) {
        auto it = y_to_origin.find(r.payload);
        if (it == y_to_origin.end())
            throw usage_error("highdim_ruling_set: internal rep bookkeeping mismatch");
        selected.push_back(P[it->second]);
    }

    if (use_jl) {
        // distortion can (rarely) break tau-independence in original space;
        // a lex-greedy filter restores it without touching typical runs
        std::sort(selected.begin(), selected.end(), lex_less);
        std::vector<Point> kept;
        for (const auto& p : selected) {
            bool ok = true;
            for (const auto& q : kept)
                if (dist(p, q) <= tau) { ok = false; break; }
            if (ok) kept.push_back(p);
        }
        selected = std::move(kept);
    }

    auto result = finish_selected(std::move(selected), P, tau);
    return {std::move(result), comp.report()};
}

} // namespace kcmpc
