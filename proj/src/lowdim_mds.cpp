#include "kcmpc/lowdim_mds.hpp"
#include "kcmpc/constants.hpp"
#include "kcmpc/lowdim_rs.hpp"
#include "kcmpc/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace kcmpc {

namespace {

// doubles c_mds until the averaging slack T >= d(d+1)/eps holds
double mds_ell(std::size_t d, double tau, double eps) {
    if (!(tau > 0)) throw usage_error("shift grid: tau must be positive");
    if (!(eps > 0 && eps < 1)) throw usage_error("shift grid: eps must be in (0,1)");
    const double dd = static_cast<double>(d);
    const double beta = 2.0 * tau;
    const double need = dd * (dd + 1.0) / eps;
    double c_mds = 1.0;
    for (int it = 0; it < 64; ++it) {
        const double ell = c_mds * std::pow(dd, 3.5) / eps * beta;
        const double z = ell / std::sqrt(dd);
        const double bb = dd * beta + tau;
        if (std::floor(z / (4.0 * bb)) >= need) return ell;
        c_mds *= 2.0;
    }
    throw usage_error("shift grid: could not satisfy averaging slack");
}

} // namespace

ShiftGrid::ShiftGrid(std::size_t d, double tau, double eps)
    : b(0), step(0), T(0), params(d, 2.0 * tau, mds_ell(d, tau, eps)) {
    b = static_cast<double>(d) * params.beta + tau;
    step = 4.0 * b;
    T = static_cast<std::size_t>(std::floor(params.z() / step));
    values.resize(T);
    for (std::size_t i = 0; i < T; ++i) values[i] = static_cast<double>(i) * step;
}

std::size_t ShiftGrid::shift_count() const {
    std::size_t c = 1;
    for (std::size_t j = 0; j < params.d; ++j) {
        if (c > (std::size_t{1} << 62) / std::max<std::size_t>(T, 1)) return SIZE_MAX;
        c *= T;
    }
    return c;
}

Point ShiftGrid::shift_vector(std::size_t index) const {
    Point v(params.d);
    for (std::size_t j = params.d; j-- > 0;) {
        v[j] = values[index % T];
        index /= T;
    }
    return v;
}

namespace {

struct CoverSolver {
    const Dataset& S;
    double tau;
    std::unordered_map<std::uint32_t, bool> feas_cache;

    bool feasible(std::uint32_t mask) {
        auto it = feas_cache.find(mask);
        if (it != feas_cache.end()) return it->second;
        std::vector<Point> pts;
        for (std::size_t i = 0; i < S.size(); ++i)
            if (mask >> i & 1) pts.push_back(S[i]);
        bool ok = min_enclosing_ball(std::span<const Point>(pts)).radius <= tau;
        feas_cache.emplace(mask, ok);
        return ok;
    }

    std::size_t best_size = SIZE_MAX;
    std::vector<std::uint32_t> best_cover, cur;

    // maximal feasible subsets of (cur | cand) extending cur; excl tracks
    // skipped-but-addable points so non-maximal leaves are rejected
    template <typename Emit>
    void enum_maximal(std::uint32_t curset, std::uint32_t cand, std::uint32_t excl,
                      const Emit& emit) {
        if (cand == 0) {
            for (std::uint32_t e = excl; e; e &= e - 1)
                if (feasible(curset | (e & (~e + 1)))) return;
            emit(curset);
            return;
        }
        const std::uint32_t j = cand & (~cand + 1);
        if (feasible(curset | j)) {
            enum_maximal(curset | j, cand ^ j, excl, emit);
            enum_maximal(curset, cand ^ j, excl | j, emit);
        } else {
            // downward closure: j can never join any superset of curset
            enum_maximal(curset, cand ^ j, excl, emit);
        }
    }

    void search(std::uint32_t uncovered) {
        if (uncovered == 0) {
            if (cur.size() < best_size) {
                best_size = cur.size();
                best_cover = cur;
            }
            return;
        }
        if (cur.size() + 1 >= best_size) return;
        const std::uint32_t anchor = uncovered & (~uncovered + 1);
        enum_maximal(anchor, uncovered ^ anchor, 0, [&](std::uint32_t F) {
            cur.push_back(F);
            search(uncovered & ~F);
            cur.pop_back();
        });
    }
};

Dataset dedupe_points(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Dataset out;
    for (auto& p : pts) out.push_back(std::move(p));
    return out;
}

} // namespace

Dataset exact_bucket_mds(const Dataset& S, double tau, std::size_t capacity) {
    if (S.empty()) throw usage_error("exact_bucket_mds: empty bucket");
    if (!(tau >= 0)) throw usage_error("exact_bucket_mds: tau must be nonnegative");
    if (capacity > 31) throw usage_error("exact_bucket_mds: capacity beyond 31 unsupported");
    if (S.size() > capacity)
        throw resource_error("exact_bucket_mds: bucket of " + std::to_string(S.size()) +
                             " points exceeds exact-solver capacity " +
                             std::to_string(capacity));

    CoverSolver solver{S, tau, {}};
    // greedy maximal packing by ascending index seeds the upper bound
    {
        std::uint32_t uncovered = (S.size() == 32 ? ~0u : (1u << S.size()) - 1);
        std::vector<std::uint32_t> greedy;
        while (uncovered) {
            std::uint32_t set = uncovered & (~uncovered + 1);
            for (std::uint32_t c = uncovered & ~set; c; c &= c - 1) {
                const std::uint32_t j = c & (~c + 1);
                if (solver.feasible(set | j)) set |= j;
            }
            greedy.push_back(set);
            uncovered &= ~set;
        }
        solver.best_size = greedy.size();
        solver.best_cover = greedy;
        solver.search((S.size() == 32 ? ~0u : (1u << S.size()) - 1));
    }

    Dataset centers;
    for (std::uint32_t mask : solver.best_cover) {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < S.size(); ++i)
            if (mask >> i & 1) pts.push_back(S[i]);
        centers.push_back(min_enclosing_ball(std::span<const Point>(pts)).center);
    }
    return centers;
}

double certify_domination(const Dataset& P, const Dataset& C) {
    if (C.empty()) throw usage_error("certify_domination: empty center set");
    double r = 0.0;
    for (const auto& p : P.points) r = std::max(r, dist_to_set(p, C));
    return r;
}

std::pair<DominatingSetResult, ResourceReport>
approx_mds(const Dataset& P, double tau, double eps, const MpcConfig& cfg) {
    if (!(tau > 0)) throw usage_error("approx_mds: tau must be positive");
    if (!(eps > 0 && eps < 1)) throw usage_error("approx_mds: eps must be in (0,1)");
    if (P.empty()) throw usage_error("approx_mds: empty dataset");
    const std::size_t d = P.dim();

    ShiftGrid shifts(d, tau, eps);
    const std::size_t n_shifts = shifts.shift_count();
    if (n_shifts > constants::shift_cap)
        throw usage_error("approx_mds: " + std::to_string(shifts.T) + "^" +
                          std::to_string(d) +
                          " shift vectors exceed the enumeration cap; lower d or raise eps");

    // metered rounding pass
    const GridSpec grid(eps * tau / std::sqrt(static_cast<double>(d)));
    MpcComputation rounding(P, cfg);
    rounding.shuffle_by_key([&](const Record& r) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (long long c : grid_image(r.payload, grid)) {
            h ^= static_cast<std::uint64_t>(c);
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return h;
    });
    rounding.local_map([&](std::size_t, const std::vector<Record>& in) {
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
    Dataset reps;
    {
        std::vector<Point> pts;
        for (const auto& r : rounding.gather()) pts.push_back(r.payload);
        reps = dedupe_points(std::move(pts));
    }

    // shifts that induce the same bucket partition on the reps run the exact
    // same computation, so meter one representative per partition class and
    // charge every shift its class's report
    std::vector<std::size_t> class_of(n_shifts);
    std::vector<std::size_t> class_shift;
    {
        std::map<std::vector<std::size_t>, std::size_t> classes;
        std::vector<std::size_t> labels(reps.size());
        for (std::size_t si = 0; si < n_shifts; ++si) {
            const Point v = shifts.shift_vector(si);
            std::map<BucketId, std::size_t> first;
            for (std::size_t i = 0; i < reps.size(); ++i)
                labels[i] = first.try_emplace(shifted_hash(reps[i], v, shifts.params), i)
                                .first->second;
            auto [it, fresh] = classes.try_emplace(labels, class_shift.size());
            if (fresh) class_shift.push_back(si);
            class_of[si] = it->second;
        }
    }

    struct ShiftOutcome {
        Dataset centers;
        ResourceReport report;
    };
    std::vector<ShiftOutcome> outcomes(class_shift.size());
    std::exception_ptr failure;

    parallel_for(class_shift.size(), [&](std::size_t ci) {
        try {
            const Point v = shifts.shift_vector(class_shift[ci]);
            MpcComputation comp(reps, cfg);
            comp.shuffle_by_key(
                [&](const Record& r) { return shifted_hash(r.payload, v, shifts.params).key64(); });
            comp.local_map([&](std::size_t, const std::vector<Record>& in) {
                std::map<BucketId, Dataset> buckets;
                for (const auto& r : in)
                    buckets[shifted_hash(r.payload, v, shifts.params)].push_back(r.payload);
                std::vector<Record> out;
                for (const auto& [id, pts] : buckets)
                    for (const auto& c : exact_bucket_mds(pts, tau).points)
                        out.push_back(Record{c});
                return out;
            });
            std::vector<Point> centers;
            for (const auto& r : comp.gather()) centers.push_back(r.payload);
            outcomes[ci] = {dedupe_points(std::move(centers)), comp.report()};
        } catch (...) {
#ifdef KCMPC_HAVE_OPENMP
#pragma omp critical
#endif
            { if (!failure) failure = std::current_exception(); }
        }
    });
    if (failure) std::rethrow_exception(failure);

    std::size_t best = 0;
    for (std::size_t si = 1; si < n_shifts; ++si)
        if (outcomes[class_of[si]].centers.size() < outcomes[class_of[best]].centers.size())
            best = si;

    DominatingSetResult result;
    result.centers = outcomes[class_of[best]].centers;
    result.size = result.centers.size();
    result.chosen_shift = shifts.shift_vector(best);
    result.radius_certified = certify_domination(P, result.centers);

    ResourceReport shifts_merged = outcomes[class_of[0]].report;
    for (std::size_t si = 1; si < n_shifts; ++si)
        shifts_merged.merge_parallel(outcomes[class_of[si]].report);
    ResourceReport total = rounding.report();
    total.merge_sequential(shifts_merged);
    return {std::move(result), total};
}

} // namespace kcmpc
