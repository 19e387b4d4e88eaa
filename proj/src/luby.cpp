#include "kcmpc/luby.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

namespace kcmpc {

Graph::Graph(std::size_t vertices, std::vector<std::pair<std::size_t, std::size_t>> e)
    : n(vertices), edges(std::move(e)) {
    for (auto& [u, v] : edges) {
        if (u == v) throw usage_error("graph: self-loop on vertex " + std::to_string(u));
        if (u >= n || v >= n) throw usage_error("graph: edge endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw usage_error("graph: duplicate edge");
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

namespace {

// a uniformly random permutation rank is all the algorithm sees of h
std::vector<std::size_t> draw_ranks(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(seed ^ 0xa0761d6478bd642fULL);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[perm[i]] = i;
    return rank;
}

std::vector<std::size_t> select_by_rank(const Graph& G, const std::vector<std::size_t>& rank) {
    const auto adj = G.adjacency();
    std::vector<std::size_t> S;
    for (std::size_t v = 0; v < G.n; ++v) {
        bool minimal = true;
        for (std::size_t u : adj[v])
            if (rank[u] < rank[v]) { minimal = false; break; }
        if (minimal) S.push_back(v);
    }
    return S;
}

} // namespace

std::vector<std::size_t> luby_one_round(const Graph& G, std::uint64_t seed) {
    return select_by_rank(G, draw_ranks(G.n, seed));
}

std::size_t ruling_radius(const Graph& G, const std::vector<std::size_t>& S) {
    if (S.empty()) throw usage_error("ruling_radius: empty set");
    const auto adj = G.adjacency();
    std::vector<std::size_t> dist(G.n, SIZE_MAX);
    std::deque<std::size_t> q;
    for (std::size_t s : S) {
        if (s >= G.n) throw usage_error("ruling_radius: vertex out of range");
        dist[s] = 0;
        q.push_back(s);
    }
    while (!q.empty()) {
        const std::size_t v = q.front();
        q.pop_front();
        for (std::size_t u : adj[v])
            if (dist[u] == SIZE_MAX) {
                dist[u] = dist[v] + 1;
                q.push_back(u);
            }
    }
    std::size_t r = 0;
    for (std::size_t v = 0; v < G.n; ++v) {
        if (dist[v] == SIZE_MAX)
            throw usage_error("ruling_radius: S misses a whole component");
        r = std::max(r, dist[v]);
    }
    return r;
}

Graph build_lower_bound_instance(std::size_t m, std::size_t copies) {
    if (m < 2) throw usage_error("lower bound instance needs m >= 2");
    if (m > 10) throw usage_error("lower bound instance capped at m = 10");
    if (copies < 1 || copies > 4096)
        throw usage_error("lower bound instance: copies must be in 1..4096");

    const std::size_t per_copy = (std::size_t{2} << m) - 2; // sum 2^i, i=1..m
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t c = 0; c < copies; ++c) {
        const std::size_t base = c * per_copy;
        std::size_t layer_start = 0;
        std::size_t prev_start = 0, prev_size = 0;
        for (std::size_t i = 1; i <= m; ++i) {
            const std::size_t size = std::size_t{1} << i;
            const std::size_t start = base + layer_start;
            for (std::size_t a = 0; a < size; ++a)
                for (std::size_t b = a + 1; b < size; ++b)
                    edges.push_back({start + a, start + b});
            if (prev_size)
                for (std::size_t a = 0; a < prev_size; ++a)
                    for (std::size_t b = 0; b < size; ++b)
                        edges.push_back({prev_start + a, start + b});
            prev_start = start;
            prev_size = size;
            layer_start += size;
        }
    }
    return Graph(copies * per_copy, std::move(edges));
}

double chain_event_probability(std::size_t m) {
    double p = 1.0;
    for (std::size_t i = 1; i + 1 <= m; ++i) {
        const double sz_i = std::pow(2.0, static_cast<double>(i));
        const double sz_next = 2.0 * sz_i;
        p *= 1.0 - std::pow(1.0 - 1.0 / (sz_i + 1.0), sz_next);
    }
    return p;
}

namespace {

// event: the layer minima strictly decrease, i.e. for every i some vertex of
// V_{i+1} outranks all of V_i
bool chain_event(const std::vector<std::size_t>& rank, std::size_t base, std::size_t m) {
    std::size_t off = 0;
    std::size_t prev_min = SIZE_MAX;
    bool ok = true;
    for (std::size_t i = 1; i <= m; ++i) {
        const std::size_t size = std::size_t{1} << i;
        std::size_t mn = SIZE_MAX;
        for (std::size_t a = 0; a < size; ++a) mn = std::min(mn, rank[base + off + a]);
        if (i > 1 && mn >= prev_min) ok = false;
        prev_min = mn;
        off += size;
    }
    return ok;
}

} // namespace

double chain_event_frequency(std::size_t m, std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw usage_error("chain_event_frequency: trials must be >= 1");
    if (m < 1) throw usage_error("chain_event_frequency: m must be >= 1");
    if (m == 1) return 1.0; // empty conjunction
    const std::size_t per_copy = (std::size_t{2} << m) - 2;
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto rank = draw_ranks(per_copy, seed + 0x9e37 * t);
        if (chain_event(rank, 0, m)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

LowerBoundTrial lower_bound_trial(std::size_t m, std::size_t copies, std::uint64_t seed) {
    const Graph G = build_lower_bound_instance(m, copies);
    const auto rank = draw_ranks(G.n, seed);
    const auto S = select_by_rank(G, rank);
    const std::size_t per_copy = (std::size_t{2} << m) - 2;

    // split S and distances per copy (copies are disconnected)
    LowerBoundTrial out;
    out.event.resize(copies);
    out.radius.resize(copies);
    const auto adj = G.adjacency();
    for (std::size_t c = 0; c < copies; ++c) {
        const std::size_t base = c * per_copy;
        out.event[c] = chain_event(rank, base, m);
        std::vector<std::size_t> local_S;
        for (std::size_t s : S)
            if (s >= base && s < base + per_copy) local_S.push_back(s);
        std::vector<std::size_t> dist(per_copy, SIZE_MAX);
        std::deque<std::size_t> q;
        for (std::size_t s : local_S) {
            dist[s - base] = 0;
            q.push_back(s);
        }
        std::size_t r = 0;
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop_front();
            for (std::size_t u : adj[v])
                if (dist[u - base] == SIZE_MAX) {
                    dist[u - base] = dist[v - base] + 1;
                    r = std::max(r, dist[u - base]);
                    q.push_back(u);
                }
        }
        out.radius[c] = r;
    }
    return out;
}

} // namespace kcmpc
