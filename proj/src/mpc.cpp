#include "kcmpc/mpc.hpp"
#include "kcmpc/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include <json.hpp>

namespace kcmpc {

void MpcConfig::validate() const {
    if (machine_count == 0) throw usage_error("machine_count must be positive");
    if (local_memory_s == 0) throw usage_error("local_memory_s must be positive");
    if (local_memory_s < memory_floor)
        throw usage_error("local_memory_s below configured floor of " +
                          std::to_string(memory_floor));
}

void ResourceReport::merge_parallel(const ResourceReport& other) {
    rounds_used = std::max(rounds_used, other.rounds_used);
    peak_local_memory = std::max(peak_local_memory, other.peak_local_memory);
    total_memory += other.total_memory;
    total_messages += other.total_messages;
    machine_count = std::max(machine_count, other.machine_count);
    local_memory_s = std::max(local_memory_s, other.local_memory_s);
}

void ResourceReport::merge_sequential(const ResourceReport& other) {
    rounds_used += other.rounds_used;
    peak_local_memory = std::max(peak_local_memory, other.peak_local_memory);
    total_memory = std::max(total_memory, other.total_memory);
    total_messages += other.total_messages;
    machine_count = std::max(machine_count, other.machine_count);
    local_memory_s = std::max(local_memory_s, other.local_memory_s);
}

std::string ResourceReport::to_json() const {
    nlohmann::json j{{"rounds_used", rounds_used},
                     {"peak_local_memory", peak_local_memory},
                     {"total_memory", total_memory},
                     {"total_messages", total_messages},
                     {"machine_count", machine_count},
                     {"local_memory_s", local_memory_s},
                     {"seed", seed}};
    return j.dump();
}

Record point_record(const Point& p) { return Record{p}; }
Point record_point(const Record& r) { return r.payload; }

MpcComputation::MpcComputation(const Dataset& input, const MpcConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const std::size_t d = std::max<std::size_t>(input.dim(), 1);
    input_units_ = input.size() * d;
    if (input_units_ > cfg_.machine_count * cfg_.local_memory_s)
        throw resource_error("input of " + std::to_string(input_units_) +
                             " units exceeds capacity " +
                             std::to_string(cfg_.machine_count * cfg_.local_memory_s));
    machines_.resize(cfg_.machine_count);
    // contiguous fill, s units per machine
    std::size_t m = 0, used = 0;
    for (const auto& p : input.points) {
        if (used + d > cfg_.local_memory_s) { ++m; used = 0; }
        machines_[m].push_back(point_record(p));
        used += d;
    }
    barrier(0, std::vector<std::size_t>(machine_count(), 0),
            std::vector<std::size_t>(machine_count(), 0));
}

std::size_t MpcComputation::units_on(std::size_t m) const {
    std::size_t u = 0;
    for (const auto& r : machines_[m]) u += r.units();
    return u;
}

std::size_t MpcComputation::log_s_n() const {
    double n = static_cast<double>(std::max<std::size_t>(input_units_, 2));
    double s = static_cast<double>(std::max<std::size_t>(cfg_.local_memory_s, 2));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(n) / std::log(s))));
}

void MpcComputation::barrier(std::size_t charged_rounds,
                             const std::vector<std::size_t>& sent,
                             const std::vector<std::size_t>& received) {
    round_counter_ += charged_rounds;
    const std::size_t msg_budget = cfg_.c_msg * cfg_.local_memory_s * std::max<std::size_t>(charged_rounds, 1);
    std::size_t total = 0;
    std::vector<std::size_t> sizes(machine_count());
    for (std::size_t m = 0; m < machine_count(); ++m) {
        sizes[m] = units_on(m);
        total += sizes[m];
        peak_local_ = std::max(peak_local_, sizes[m]);
        if (cfg_.enforce_limits && sizes[m] > cfg_.local_memory_s)
            throw resource_error("machine " + std::to_string(m) + " holds " +
                                 std::to_string(sizes[m]) + " units > s=" +
                                 std::to_string(cfg_.local_memory_s) + " at round " +
                                 std::to_string(round_counter_));
        if (cfg_.enforce_limits && (sent[m] > msg_budget || received[m] > msg_budget))
            throw resource_error("machine " + std::to_string(m) +
                                 " exceeded message budget at round " +
                                 std::to_string(round_counter_));
        total_messages_ += sent[m];
    }
    peak_total_ = std::max(peak_total_, total);
    trace_.push_back(std::move(sizes));
}

void MpcComputation::sort(const std::function<bool(const Record&, const Record&)>& cmp) {
    struct Tagged { const Record* r; std::size_t machine; std::size_t global; };
    std::vector<Tagged> all;
    for (std::size_t m = 0; m < machine_count(); ++m)
        for (const auto& r : machines_[m])
            all.push_back({&r, m, all.size()});
    std::stable_sort(all.begin(), all.end(),
                     [&](const Tagged& a, const Tagged& b) { return cmp(*a.r, *b.r); });

    std::vector<std::vector<Record>> next(machine_count());
    std::vector<std::size_t> sent(machine_count(), 0), recv(machine_count(), 0);
    std::size_t m = 0, used = 0;
    for (const auto& t : all) {
        std::size_t u = t.r->units();
        if (used + u > cfg_.local_memory_s && !next[m].empty()) { ++m; used = 0; }
        if (m >= machine_count())
            throw resource_error("sort overflowed machine array");
        if (m != t.machine) { sent[t.machine] += u; recv[m] += u; }
        next[m].push_back(*t.r);
        used += u;
    }
    machines_ = std::move(next);
    barrier(cfg_.c_sort * log_s_n(), sent, recv);
}

void MpcComputation::shuffle_by_key(const std::function<std::uint64_t(const Record&)>& key) {
    std::map<std::uint64_t, std::vector<std::pair<std::size_t, const Record*>>> groups;
    std::size_t order = 0;
    for (std::size_t m = 0; m < machine_count(); ++m)
        for (const auto& r : machines_[m])
            groups[key(r)].push_back({m, &r}), ++order;

    std::vector<std::vector<Record>> next(machine_count());
    std::vector<std::size_t> sent(machine_count(), 0), recv(machine_count(), 0);
    std::size_t m = 0, used = 0;
    for (auto& [k, members] : groups) {
        std::size_t gu = 0;
        for (auto& [src, r] : members) gu += r->units();
        if (cfg_.enforce_limits && gu > cfg_.local_memory_s)
            throw resource_error("key group " + std::to_string(k) + " of " +
                                 std::to_string(gu) + " units exceeds s=" +
                                 std::to_string(cfg_.local_memory_s));
        if (used + gu > cfg_.local_memory_s && !next[m].empty()) { ++m; used = 0; }
        if (m >= machine_count())
            throw resource_error("shuffle ran out of machines; raise machine_count or s");
        for (auto& [src, r] : members) {
            if (src != m) { sent[src] += r->units(); recv[m] += r->units(); }
            next[m].push_back(*r);
        }
        used += gu;
    }
    machines_ = std::move(next);
    barrier(cfg_.c_sort * log_s_n(), sent, recv);
}

void MpcComputation::broadcast(const Record& payload) {
    const std::size_t u = payload.units();
    const auto sqrt_s = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(cfg_.local_memory_s))));
    if (u > sqrt_s)
        throw usage_error("broadcast payload of " + std::to_string(u) +
                          " units exceeds sqrt(s)=" + std::to_string(sqrt_s));
    if (machine_count() == 1) {
        machines_[0].push_back(payload);
        barrier(0, {0}, {0});
        return;
    }
    const std::size_t fanout = std::max<std::size_t>(2, sqrt_s);
    std::size_t rounds = 0, covered = 1;
    while (covered < machine_count()) { covered *= fanout; ++rounds; }
    std::vector<std::size_t> sent(machine_count(), 0), recv(machine_count(), u);
    recv[0] = 0;
    sent[0] = u * std::min(fanout, machine_count() - 1); // root's worst level
    for (auto& buf : machines_) buf.push_back(payload);
    barrier(std::min(rounds, cfg_.c_b * log_s_n()), sent, recv);
}

double MpcComputation::converge_cast_min(const std::vector<double>& per_machine) {
    if (per_machine.size() != machine_count())
        throw usage_error("converge_cast_min expects one value per machine");
    if (machine_count() == 1) { barrier(0, {0}, {0}); return per_machine[0]; }
    const auto sqrt_s = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(cfg_.local_memory_s)))));
    std::size_t rounds = 0, covered = 1;
    while (covered < machine_count()) { covered *= sqrt_s; ++rounds; }
    std::vector<std::size_t> sent(machine_count(), 1), recv(machine_count(), 0);
    sent[0] = 0;
    recv[0] = std::min(sqrt_s, machine_count() - 1);
    barrier(std::min(rounds, cfg_.c_b * log_s_n()), sent, recv);
    return *std::min_element(per_machine.begin(), per_machine.end());
}

void MpcComputation::multicast(
    const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& plan) {
    if (plan.size() != machine_count()) throw usage_error("multicast plan size mismatch");
    std::vector<std::size_t> sent(machine_count(), 0), recv(machine_count(), 0);
    std::vector<std::vector<Record>> incoming(machine_count());
    for (std::size_t m = 0; m < machine_count(); ++m) {
        for (auto [idx, dest] : plan[m]) {
            const Record& r = machines_[m].at(idx);
            if (dest == m) continue;
            sent[m] += r.units();
            recv[dest] += r.units();
            incoming[dest].push_back(r);
        }
    }
    for (std::size_t m = 0; m < machine_count(); ++m)
        for (auto& r : incoming[m]) machines_[m].push_back(std::move(r));
    barrier(cfg_.c_b * log_s_n(), sent, recv);
}

void MpcComputation::local_map(
    const std::function<std::vector<Record>(std::size_t, const std::vector<Record>&)>& fn) {
    std::vector<std::vector<Record>> next(machine_count());
    parallel_for(machine_count(), [&](std::size_t m) { next[m] = fn(m, machines_[m]); });
    machines_ = std::move(next);
    barrier(0, std::vector<std::size_t>(machine_count(), 0),
            std::vector<std::size_t>(machine_count(), 0));
}

std::vector<Record> MpcComputation::gather() const {
    std::vector<Record> all;
    for (const auto& buf : machines_)
        for (const auto& r : buf) all.push_back(r);
    return all;
}

ResourceReport MpcComputation::report() const {
    ResourceReport r;
    r.rounds_used = round_counter_;
    r.peak_local_memory = peak_local_;
    r.total_memory = peak_total_;
    r.total_messages = total_messages_;
    r.machine_count = machine_count();
    r.local_memory_s = cfg_.local_memory_s;
    r.seed = cfg_.seed;
    return r;
}

} // namespace kcmpc
