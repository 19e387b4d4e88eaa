#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kcmpc/geometry.hpp"
#include "kcmpc/mpc.hpp"

namespace kcmpc {

enum class KCenterMode { rs_lowdim, rs_highdim, mds_bicriteria };

std::string to_string(KCenterMode m);
KCenterMode kcenter_mode_from_string(const std::string& s);

/// Coarse estimate E with OPT <= E <= c_est * n^7 * OPT (w.h.p.): project
/// onto a Gaussian direction, sort, take the k-th largest consecutive gap.
struct OptEstimate {
    double E;
    double E_raw; // n * r_k, or max - min for k = 1
    double r_k;
    std::uint64_t projection_seed;
};

OptEstimate coarse_opt_estimate(const Dataset& P, std::size_t k, std::uint64_t seed);

/// Powers of (1+eps) covering [E/alpha, E], ascending. Never empty: when the
/// window holds no exact power the one just below E stands in.
std::vector<double> candidate_thresholds(double E, double eps, double alpha);

struct KCenterSolution {
    Dataset centers;
    std::vector<std::size_t> assignment; // point index -> center index
    double cost = 0.0;                   // exact max assigned distance
    double tau_star = 0.0;
    KCenterMode mode = KCenterMode::rs_lowdim;
    ResourceReport report;
};

/// Algorithm outline: distinct-point shortcut, coarse estimate, threshold
/// search (smallest feasible), then assignment. Internally every subcall
/// runs at eps' = eps/8 so the end-to-end factors stay within (2+3eps) /
/// (1+3eps) of the optimum. Throws estimator_error if no threshold is
/// feasible even after one estimator reseed.
KCenterSolution solve_kcenter(const Dataset& P, std::size_t k, double eps,
                              KCenterMode mode, const MpcConfig& cfg);

/// Grid-rounded nearest-center assignment; per-point assigned distance is
/// within (1 + 4 eps) of the exact nearest-center distance when
/// cost(P, C) is on the order of tau.
std::vector<std::size_t> assign_lowdim(const Dataset& P, const Dataset& C, double tau,
                                       double eps, const MpcConfig& cfg);

/// Bucket-join assignment: each point takes the smallest-index center found
/// in its approximate ball of radius O(tau); assigned distance O(eps^-1 tau).
std::vector<std::size_t> assign_highdim(const Dataset& P, const Dataset& C, double tau,
                                        double eps, const MpcConfig& cfg);

} // namespace kcmpc
