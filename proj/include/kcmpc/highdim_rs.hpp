#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kcmpc/geohash.hpp"
#include "kcmpc/lowdim_rs.hpp"
#include "kcmpc/mpc.hpp"

namespace kcmpc {

/// Gamma ~ d / log log n, clamped to the legal [8, max(8, 2d)] window.
double consistent_gamma(std::size_t d, std::size_t n);

/// Bucket representatives plus per-representative random labels.
struct LabeledDataset {
    Dataset reps;                       // one lex-min point per nonempty bucket
    std::vector<std::size_t> origin;    // index of each rep in the input
    std::vector<std::uint64_t> labels;  // pairwise distinct, < 2^53
    ConsistentHashParams hash;
    double tau;
};

/// Collapses P to consistent-hash bucket representatives with ell =
/// beta * Gamma * tau, then draws distinct labels from cfg.seed.
/// Any (tau, alpha*tau)-RS on the reps rules P within (alpha + beta*Gamma)*tau.
LabeledDataset preprocess_reps(const Dataset& P, double tau, double beta,
                               const MpcConfig& cfg);

/// Approximate neighborhoods: A(p) is the union of buckets containing some
/// q with dist(p, q) <= tau, so B(p, tau) <= A(p) <= B(p, (1 + ell/tau) tau).
struct ApproxBallOracle {
    double tau;
    double beta_eff; // 1 + ell/tau
    std::vector<std::vector<std::size_t>> neighbors; // A(p) as index lists
};

ApproxBallOracle build_approx_ball_oracle(const Dataset& Pp, double tau,
                                          const ConsistentHashParams& hash);

/// For every point, the minimum label over its A set and the point holding
/// it. The same A sets back the selection test and the chain replay.
struct BallMin {
    std::uint64_t min_label;
    std::size_t argmin; // index into the rep set
};

std::vector<BallMin> approx_ball_min(const LabeledDataset& L, const ApproxBallOracle& oracle);

/// Keep p iff its own label is minimal over A(p). The result is exactly
/// tau-independent: mutually tau-close points see each other's labels.
RulingSetResult one_round_luby(const LabeledDataset& L, const ApproxBallOracle& oracle);

/// Assignment-chain replay from p: hop to the min-label neighbor until a
/// selected point is reached. Labels strictly decrease, so it terminates.
struct ChainTrace {
    std::vector<std::size_t> hops; // rep indices, front = start, back = selected
    std::size_t length() const { return hops.size() - 1; }
};

ChainTrace measure_chain(const LabeledDataset& L, const ApproxBallOracle& oracle,
                         std::size_t start_rep);

/// Full pipeline: optional JL reduction (only when d > 4 log2 n), rep
/// preprocessing, one-round Luby; executed on the metered runtime.
/// Output is exactly tau-independent on P; domination certified exactly.
std::pair<RulingSetResult, ResourceReport>
highdim_ruling_set(const Dataset& P, double tau, double eps, const MpcConfig& cfg);

} // namespace kcmpc
