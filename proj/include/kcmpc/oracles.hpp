#pragma once

#include "kcmpc/geometry.hpp"

namespace kcmpc {

/// Hard caps for the exact solvers. Beyond them the oracle refuses
/// (usage error) instead of silently approximating.
struct OracleBudget {
    std::size_t max_n = 12;
    std::size_t max_d = 3;
};

/// Exact minimum number of radius-tau balls (centers anywhere in R^d)
/// covering P. Feasible subsets are those whose minimum enclosing ball has
/// radius <= tau; solved as exact minimum set cover by subset DP.
std::size_t oracle_mds_size(const Dataset& P, double tau,
                            const OracleBudget& budget = {});

/// Exact k-center optimum: min over partitions of P into <= k parts of the
/// max part MEB radius. OPT is always a subset MEB radius, so the search is
/// exact without continuous optimization.
double oracle_kcenter_opt(const Dataset& P, std::size_t k,
                          const OracleBudget& budget = {});

struct RulingSetCheck {
    bool is_independent;
    double domination_radius; // +inf when S is empty
};

/// Exact verification that S (a subset of P, membership checked exactly)
/// is pairwise > tau separated, plus the exact max distance from P to S.
RulingSetCheck verify_ruling_set(const Dataset& P, const Dataset& S, double tau);

/// Size of the largest subset of P with pairwise distances strictly > radius,
/// by exhaustive search. Supports the k-vs-independence fact checks.
std::size_t oracle_max_independent(const Dataset& P, double radius,
                                   const OracleBudget& budget = {});

} // namespace kcmpc
