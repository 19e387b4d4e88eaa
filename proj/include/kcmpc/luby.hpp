#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kcmpc/errors.hpp"

namespace kcmpc {

struct Graph {
    std::size_t n = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges; // sorted, u < v

    Graph() = default;
    Graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> e);

    std::vector<std::vector<std::size_t>> adjacency() const;
};

/// One iteration of Luby: a vertex joins S iff it holds the smallest label
/// in its closed neighborhood. S is independent for every label draw.
std::vector<std::size_t> luby_one_round(const Graph& G, std::uint64_t seed);

/// Exact max BFS hop distance from any vertex to S.
std::size_t ruling_radius(const Graph& G, const std::vector<std::size_t>& S);

/// Layered witness: layers V_1..V_m with |V_i| = 2^i, cliques inside layers,
/// complete bipartite edges between consecutive layers; replicated with no
/// cross-copy edges.
Graph build_lower_bound_instance(std::size_t m, std::size_t copies);

/// Empirical frequency of the chain event (for every layer i, some vertex of
/// V_{i+1} gets a smaller label than all of V_i) on one copy.
double chain_event_frequency(std::size_t m, std::size_t trials, std::uint64_t seed);

/// The analytic product the frequency converges to:
/// prod_{i=1}^{m-1} (1 - (1 - 1/(2^i+1))^{2^{i+1}}).
double chain_event_probability(std::size_t m);

/// One label draw on a replicated instance: per-copy chain-event indicator
/// plus the per-copy ruling radius of the Luby output.
struct LowerBoundTrial {
    std::vector<bool> event;           // per copy
    std::vector<std::size_t> radius;   // per copy
};

LowerBoundTrial lower_bound_trial(std::size_t m, std::size_t copies, std::uint64_t seed);

} // namespace kcmpc
