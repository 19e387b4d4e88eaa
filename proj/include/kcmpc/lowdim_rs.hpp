#pragma once

#include <map>

#include "kcmpc/geohash.hpp"
#include "kcmpc/geometry.hpp"
#include "kcmpc/mpc.hpp"

namespace kcmpc {

/// P' subset of P, one representative (lexicographically smallest point) per
/// occupied cell of the eps*tau/sqrt(d) grid. Any tau-DS for P' dominates P
/// within (1+2*eps)*tau.
struct RoundedDataset {
    Dataset reps;                                   // first-occurrence order
    std::map<std::vector<long long>, std::size_t> rep_of; // grid image -> index
    double grid_step;
};

struct RulingSetResult {
    Dataset selected;
    double independence_radius = 0.0;
    double domination_radius = 0.0; // exact max dist from the input to selected
};

RoundedDataset round_dataset(const Dataset& P, double tau, double eps);

/// Hash params prescribed for the MIS phase: beta = tau, ell = c_hash*d^1.5*tau.
FaceHashParams mis_hash_params(std::size_t d, double tau);

/// Influence of one selection travels at most one bucket diameter plus tau
/// per group; over d+1 groups that is (d+1)*tau + d*ell.
double relevance_radius(const FaceHashParams& params, double tau);

/// Group-by-group greedy tau-MIS: buckets of one group are > tau apart, so
/// within a group each bucket runs an independent lexicographic greedy over
/// its points not yet dominated by earlier groups.
RulingSetResult sequential_mis(const Dataset& Pp, double tau, const FaceHashParams& params);

/// Per-bucket recomputation from the bucket's relevance neighborhood only.
/// Output equals sequential_mis as a set on every input.
RulingSetResult localized_mis(const Dataset& Pp, double tau, const FaceHashParams& params);

/// Full pipeline on the metered runtime: grid rounding, shuffle by bucket,
/// neighborhood replication, per-bucket local MIS. Result is exactly
/// tau-independent and dominates P within (1+2*eps)*tau.
std::pair<RulingSetResult, ResourceReport>
lowdim_ruling_set(const Dataset& P, double tau, double eps, const MpcConfig& cfg);

} // namespace kcmpc
