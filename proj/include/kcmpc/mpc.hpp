#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kcmpc/geometry.hpp"

namespace kcmpc {

/// Simulated MPC runtime configuration. One memory unit is one scalar:
/// a d-dimensional point record costs d units, a scalar message 1 unit.
struct MpcConfig {
    std::size_t local_memory_s = 64;
    std::size_t machine_count = 1;
    bool enforce_limits = true;
    std::uint64_t seed = 0;

    // The paper leaves every constant in "O(s)" messages and
    // "O(log_s n) rounds" implicit; they are pinned here instead.
    std::size_t c_msg = 4;
    std::size_t c_sort = 2;
    std::size_t c_b = 2;
    std::size_t memory_floor = 64;

    void validate() const;
};

struct ResourceReport {
    std::size_t rounds_used = 0;
    std::size_t peak_local_memory = 0;
    std::size_t total_memory = 0; // max over barriers of summed buffer units
    std::size_t total_messages = 0;
    std::size_t machine_count = 0;
    std::size_t local_memory_s = 0;
    std::uint64_t seed = 0;

    // Parallel composition (independent subcomputations side by side):
    // rounds take the max, memory and messages add.
    void merge_parallel(const ResourceReport& other);
    // Sequential composition: rounds add, peaks take the max.
    void merge_sequential(const ResourceReport& other);

    std::string to_json() const;
};

/// A record living in a machine buffer: an opaque payload of scalars.
struct Record {
    std::vector<double> payload;
    std::size_t units() const { return payload.empty() ? 1 : payload.size(); }
};

/// Synchronous machine array. All cross-machine effects happen at round
/// barriers; within a round per-machine work is pure and may run in
/// parallel. Deterministic for fixed (input, config).
class MpcComputation {
  public:
    MpcComputation(const Dataset& input, const MpcConfig& cfg);

    const MpcConfig& config() const { return cfg_; }
    std::size_t machine_count() const { return machines_.size(); }
    const std::vector<Record>& machine(std::size_t i) const { return machines_[i]; }
    std::vector<Record>& machine_mut(std::size_t i) { return machines_[i]; }
    std::size_t rounds() const { return round_counter_; }

    /// Globally (stably) sorts records across machines by cmp into balanced
    /// contiguous blocks. Charges c_sort * ceil(log_s n) rounds.
    void sort(const std::function<bool(const Record&, const Record&)>& cmp);

    /// Co-locates records with equal keys on one machine (first-fit packing
    /// in key order). Inherits sort's round cost. Throws resource_error
    /// naming the key when a group exceeds s.
    void shuffle_by_key(const std::function<std::uint64_t(const Record&)>& key);

    /// Delivers payload to every machine via a fan-out tree.
    /// Payload must be at most floor(sqrt(s)) units.
    void broadcast(const Record& payload);

    /// Fan-in tree min of one scalar per machine, delivered to machine 0.
    double converge_cast_min(const std::vector<double>& per_machine);

    /// Copies records to extra destinations per a host-computed plan:
    /// plan[m] lists (record index on machine m, destination machine).
    /// Used for neighborhood replication; charged like a shuffle.
    void multicast(const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& plan);

    /// Replaces every machine's buffer through a pure local map (no
    /// communication, no extra rounds); limits re-checked in place.
    void local_map(const std::function<std::vector<Record>(std::size_t, const std::vector<Record>&)>& fn);

    /// All records gathered in machine order (host-side view, not metered).
    std::vector<Record> gather() const;

    ResourceReport report() const;

    /// Per-barrier per-machine buffer sizes, for re-checking metering.
    const std::vector<std::vector<std::size_t>>& trace() const { return trace_; }

    std::size_t units_on(std::size_t m) const;

  private:
    void barrier(std::size_t charged_rounds,
                 const std::vector<std::size_t>& sent,
                 const std::vector<std::size_t>& received);
    std::size_t log_s_n() const;

    MpcConfig cfg_;
    std::vector<std::vector<Record>> machines_;
    std::size_t round_counter_ = 0;
    std::size_t peak_local_ = 0;
    std::size_t peak_total_ = 0;
    std::size_t total_messages_ = 0;
    std::size_t input_units_ = 0;
    std::vector<std::vector<std::size_t>> trace_;
};

Record point_record(const Point& p);
Point record_point(const Record& r);

} // namespace kcmpc
