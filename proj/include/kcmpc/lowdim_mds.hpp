#pragma once

#include "kcmpc/geohash.hpp"
#include "kcmpc/geometry.hpp"
#include "kcmpc/mpc.hpp"

namespace kcmpc {

/// Shift lattice for the averaging argument: step 4b with b = d*beta + tau
/// (beta = 2*tau), T values per axis, shift vectors drawn from values^d.
struct ShiftGrid {
    double b;
    double step;    // 4b
    std::size_t T;  // floor(z / 4b)
    std::vector<double> values;
    FaceHashParams params;

    /// Derives the grid for (d, tau, eps). c_mds starts at 1 and doubles
    /// until T >= d(d+1)/eps, so the averaging slack always holds.
    ShiftGrid(std::size_t d, double tau, double eps);

    std::size_t shift_count() const; // T^d
    Point shift_vector(std::size_t index) const; // lexicographic enumeration
};

struct DominatingSetResult {
    Dataset centers; // points of R^d, not necessarily from the input
    double radius_certified = 0.0;
    std::size_t size = 0;
    Point chosen_shift;
};

/// Exact minimum number of radius-tau balls covering S, centers at MEB
/// centers of the covered groups. Branch and bound over maximal feasible
/// subsets; feasibility (MEB radius <= tau) is downward closed.
Dataset exact_bucket_mds(const Dataset& S, double tau, std::size_t capacity = 24);

/// Rounds P to grid representatives, then for every shift v solves each
/// bucket of f_v exactly and keeps the smallest union over shifts.
/// |result| <= (1+eps) * |MDS_tau(P)| and the certified domination radius
/// is <= (1+2*eps)(1+eps)*tau.
std::pair<DominatingSetResult, ResourceReport>
approx_mds(const Dataset& P, double tau, double eps, const MpcConfig& cfg);

/// Exact max over P of dist(p, C).
double certify_domination(const Dataset& P, const Dataset& C);

} // namespace kcmpc
