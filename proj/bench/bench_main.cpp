// Times the OpenMP kernels against the serial reference path and checks that
// the two produce bit-identical output.

#include <chrono>
#include <cstdio>
#include <random>

#include "kcmpc/highdim_rs.hpp"
#include "kcmpc/lowdim_mds.hpp"
#include "kcmpc/lowdim_rs.hpp"
#include "kcmpc/parallel.hpp"

using namespace kcmpc;

namespace {

Dataset random_points(std::size_t n, std::size_t d, double span, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, span);
    Dataset P;
    for (std::size_t i = 0; i < n; ++i) {
        Point p(d);
        for (auto& x : p) x = u(rng);
        P.push_back(std::move(p));
    }
    return P;
}

template <typename F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

template <typename F, typename R>
void run_case(const char* name, F&& f, R&& result_of) {
    set_parallel(false);
    double serial_best = 1e300;
    for (int rep = 0; rep < 3; ++rep) serial_best = std::min(serial_best, timed(f));
    const auto serial_out = result_of();

    set_parallel(true);
    double parallel_best = 1e300;
    for (int rep = 0; rep < 3; ++rep) parallel_best = std::min(parallel_best, timed(f));
    const auto parallel_out = result_of();

    const bool identical = serial_out == parallel_out;
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   identical %s\n",
                name, serial_best, parallel_best, serial_best / parallel_best,
                identical ? "yes" : "NO");
    if (!identical) {
        std::fprintf(stderr, "FATAL: %s results differ between serial and parallel\n", name);
        std::exit(1);
    }
    set_parallel(true);
}

} // namespace

int main() {
    MpcConfig cfg;
    cfg.local_memory_s = 1 << 16;
    cfg.machine_count = 8;

    {
        const Dataset P = random_points(4000, 2, 40.0, 11);
        const FaceHashParams params = mis_hash_params(2, 1.0);
        Dataset out;
        run_case(
            "localized MIS (n=4000,d=2)",
            [&] { out = localized_mis(P, 1.0, params).selected; },
            [&] { return out.points; });
    }
    {
        // tight clusters keep the per-bucket exact solver at desk scale while
        // the shift sweep still fans out across threads
        std::mt19937_64 rng(22);
        std::uniform_real_distribution<double> jitter(-0.01, 0.01);
        Dataset P;
        for (int c = 0; c < 12; ++c)
            for (int i = 0; i < 100; ++i)
                P.push_back({3.0 * c + jitter(rng), 3.0 * (c % 4) + jitter(rng)});
        DominatingSetResult out;
        run_case(
            "shifted-hash MDS (n=1200)",
            [&] { out = approx_mds(P, 1.0, 0.5, cfg).first; },
            [&] { return out.centers.points; });
    }
    {
        const Dataset P = random_points(3000, 8, 10.0, 33);
        const auto L = preprocess_reps(P, 0.5, 2.0, cfg);
        std::vector<std::vector<std::size_t>> out;
        run_case(
            "approx-ball join (n=3000,d=8)",
            [&] { out = build_approx_ball_oracle(L.reps, 0.5, L.hash).neighbors; },
            [&] { return out; });
    }
    return 0;
}
