#include "kcmpc/lowdim_rs.hpp"
#include "kcmpc/constants.hpp"
#include "kcmpc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kcmpc {

namespace {

using Buckets = std::map<BucketId, std::vector<Point>>;

std::uint64_t image_key(const std::vector<long long>& img) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (long long c : img) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    }
    return h;
}

Buckets bucketize(const std::vector<Point>& pts, const FaceHashParams& params) {
    Buckets bk;
    for (const auto& p : pts) bk[face_hash(p, params)].push_back(p);
    return bk;
}

double bucket_distance(const std::vector<Point>& A, const std::vector<Point>& B) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : A)
        for (const auto& b : B) best = std::min(best, dist(a, b));
    return best;
}

/// Group-by-group greedy over an arbitrary bucket collection. Map order is
/// (level, mask, cell), so groups are processed 0..d; buckets inside one
/// group never interact (> tau apart), making their order immaterial.
std::map<BucketId, std::vector<Point>> sequential_core(const Buckets& bk, double tau,
                                                       std::size_t d) {
    std::map<BucketId, std::vector<Point>> out;
    std::vector<Point> earlier; // selections from strictly earlier groups
    for (std::size_t g = 0; g <= d; ++g) {
        std::vector<Point> this_group;
        for (const auto& [id, pts] : bk) {
            if (id.level != g) continue;
            std::vector<Point> cand = pts;
            std::sort(cand.begin(), cand.end(), lex_less);
            std::vector<Point> sel;
            for (const auto& p : cand) {
                bool free = true;
                for (const auto& x : earlier)
                    if (dist(p, x) <= tau) { free = false; break; }
                for (const auto& x : sel)
                    if (free && dist(p, x) <= tau) { free = false; break; }
                if (free) sel.push_back(p);
            }
            this_group.insert(this_group.end(), sel.begin(), sel.end());
            out[id] = std::move(sel);
        }
        earlier.insert(earlier.end(), this_group.begin(), this_group.end());
    }
    return out;
}

RulingSetResult finish(std::vector<Point> selected, const Dataset& domain, double tau) {
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

RoundedDataset round_dataset(const Dataset& P, double tau, double eps) {
    if (!(tau > 0)) throw usage_error("round_dataset: tau must be positive");
    if (!(eps > 0 && eps < 1)) throw usage_error("round_dataset: eps must be in (0,1)");
    if (P.empty()) throw usage_error("round_dataset: empty dataset");
    const double step = eps * tau / std::sqrt(static_cast<double>(P.dim()));
    GridSpec grid(step);
    RoundedDataset out;
    out.grid_step = step;
    for (const auto& p : P.points) {
        auto img = grid_image(p, grid);
        auto it = out.rep_of.find(img);
        if (it == out.rep_of.end()) {
            out.rep_of.emplace(std::move(img), out.reps.size());
            out.reps.push_back(p);
        } else if (lex_less(p, out.reps[it->second])) {
            out.reps.points[it->second] = p;
        }
    }
    return out;
}

FaceHashParams mis_hash_params(std::size_t d, double tau) {
    return FaceHashParams(d, tau,
                          constants::c_hash * std::pow(static_cast<double>(d), 1.5) * tau,
                          constants::c_hash);
}

double relevance_radius(const FaceHashParams& params, double tau) {
    return (static_cast<double>(params.d) + 1.0) * tau +
           static_cast<double>(params.d) * params.ell;
}

RulingSetResult sequential_mis(const Dataset& Pp, double tau, const FaceHashParams& params) {
    if (!(tau > 0)) throw usage_error("sequential_mis: tau must be positive");
    auto per_bucket = sequential_core(bucketize(Pp.points, params), tau, params.d);
    std::vector<Point> selected;
    for (auto& [id, sel] : per_bucket)
        selected.insert(selected.end(), sel.begin(), sel.end());
    return finish(std::move(selected), Pp, tau);
}

RulingSetResult localized_mis(const Dataset& Pp, double tau, const FaceHashParams& params) {
    if (!(tau > 0)) throw usage_error("localized_mis: tau must be positive");
    const auto bk = bucketize(Pp.points, params);
    const double R = relevance_radius(params, tau);

    std::vector<const Buckets::value_type*> order;
    for (const auto& kv : bk) order.push_back(&kv);

    std::vector<std::vector<Point>> picked(order.size());
    parallel_for(order.size(), [&](std::size_t i) {
        const auto& [id, pts] = *order[i];
        Buckets neigh;
        for (const auto& [oid, opts] : bk)
            if (oid == id || bucket_distance(pts, opts) <= R) neigh.emplace(oid, opts);
        auto local = sequential_core(neigh, tau, params.d);
        picked[i] = local.at(id);
    });

    std::vector<Point> selected;
    for (auto& sel : picked) selected.insert(selected.end(), sel.begin(), sel.end());
    return finish(std::move(selected), Pp, tau);
}

std::pair<RulingSetResult, ResourceReport>
lowdim_ruling_set(const Dataset& P, double tau, double eps, const MpcConfig& cfg) {
    if (!(tau > 0)) throw usage_error("lowdim_ruling_set: tau must be positive");
    if (!(eps > 0 && eps < 1)) throw usage_error("lowdim_ruling_set: eps must be in (0,1)");
    if (P.empty()) throw usage_error("lowdim_ruling_set: empty dataset");
    const std::size_t d = P.dim();
    const auto params = mis_hash_params(d, tau);
    const double R = relevance_radius(params, tau);
    const GridSpec grid(eps * tau / std::sqrt(static_cast<double>(d)));

    try {
        MpcComputation comp(P, cfg);

        // co-locate grid cells, then collapse each to its lex-min member
        comp.shuffle_by_key([&](const Record& r) { return image_key(grid_image(r.payload, grid)); });
        comp.local_map([&](std::size_t, const std::vector<Record>& in) {
            std::map<std::vector<long long>, Point> best;
            for (const auto& r : in) {
                auto img = grid_image(r.payload, grid);
                auto it = best.find(img);
                if (it == best.end() || lex_less(r.payload, it->second))
                    best[std::move(img)] = r.payload;
            }
            std::vector<Record> out;
            for (auto& [img, p] : best) out.push_back(Record{p});
            return out;
        });

        // co-locate hash buckets
        comp.shuffle_by_key([&](const Record& r) { return face_hash(r.payload, params).key64(); });

        // host-planned replication of each bucket's relevance neighborhood
        const std::size_t M = comp.machine_count();
        std::vector<Buckets> owned(M);
        std::vector<std::map<BucketId, std::vector<std::size_t>>> rec_idx(M);
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t i = 0; i < comp.machine(m).size(); ++i) {
                auto id = face_hash(comp.machine(m)[i].payload, params);
                owned[m][id].push_back(comp.machine(m)[i].payload);
                rec_idx[m][id].push_back(i);
            }
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> plan(M);
        for (std::size_t src = 0; src < M; ++src)
            for (const auto& [sid, spts] : owned[src])
                for (std::size_t dst = 0; dst < M; ++dst) {
                    if (dst == src) continue;
                    bool relevant = false;
                    for (const auto& [did, dpts] : owned[dst])
                        if (bucket_distance(spts, dpts) <= R) { relevant = true; break; }
                    if (relevant)
                        for (std::size_t i : rec_idx[src].at(sid)) plan[src].push_back({i, dst});
                }
        comp.multicast(plan);

        // per-bucket localized MIS from the replicated neighborhood
        comp.local_map([&](std::size_t m, const std::vector<Record>& in) {
            std::vector<Point> all;
            for (const auto& r : in) all.push_back(r.payload);
            const auto neigh_all = bucketize(all, params);
            std::vector<Record> out;
            for (const auto& [id, pts] : owned[m]) {
                Buckets neigh;
                for (const auto& [oid, opts] : neigh_all)
                    if (oid == id || bucket_distance(pts, opts) <= R) neigh.emplace(oid, opts);
                auto local = sequential_core(neigh, tau, params.d);
                for (const auto& p : local.at(id)) out.push_back(Record{p});
            }
            return out;
        });

        std::vector<Point> selected;
        for (const auto& r : comp.gather()) selected.push_back(r.payload);
        auto result = finish(std::move(selected), P, tau);
        return {std::move(result), comp.report()};
    } catch (const resource_error& e) {
        throw resource_error(std::string(e.what()) +
                             " (raise local_memory_s or eps for this instance)");
    }
}

} // namespace kcmpc
