#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "parsuffix/suffix_index.hpp"

namespace parsuffix {

enum class StepKind : std::uint8_t { nav, probe, shorten, compare, barrier };
enum class Phase : std::uint8_t { query, verify };

struct EventRef {
    std::uint32_t lane = 0;
    std::uint32_t index = 0;
};

struct StepEvent {
    StepKind kind = StepKind::nav;
    Phase phase = Phase::query;
    std::uint32_t units = 0;     // contribution to the kind's counter
    std::uint32_t duration = 0;  // scheduled steps
    bool sequenced = true;       // waits for, and is waited on by, its lane
    std::vector<EventRef> deps;
};

struct LaneCounters {
    std::uint64_t nav_chars = 0;
    std::uint64_t nav_hops = 0;
    std::uint64_t probes = 0;
    std::uint64_t shortens = 0;
    std::uint64_t compares = 0;

    LaneCounters& operator+=(const LaneCounters& o);
};

// Per-lane event log. Distinct lanes may be appended to from distinct
// threads; the lane count is fixed at construction.
class StepLedger {
public:
    explicit StepLedger(std::size_t lanes = 1);

    std::size_t lanes() const { return lanes_.size(); }
    void set_phase(Phase p) { phase_ = p; }
    Phase phase() const { return phase_; }

    EventRef record(std::uint32_t lane, StepKind kind, std::uint32_t units,
                    std::uint32_t duration, std::vector<EventRef> deps = {},
                    bool sequenced = true);

    // Unit-duration shorthands.
    EventRef nav(std::uint32_t lane, std::uint32_t chars, std::vector<EventRef> deps = {});
    EventRef probe(std::uint32_t lane, std::vector<EventRef> deps = {}, bool sequenced = true);

    // A zero-length event on every lane that waits for all lanes.
    void barrier();

    std::optional<EventRef> last(std::uint32_t lane) const;
    const std::vector<StepEvent>& events(std::uint32_t lane) const { return lanes_[lane]; }

    LaneCounters counters(std::uint32_t lane) const;
    LaneCounters totals() const;

    // Sum of event durations.
    std::uint64_t work() const;
    // Longest dependency-respecting schedule over query-phase events.
    std::uint64_t span() const;
    // Same, including verification.
    std::uint64_t total_span() const;

private:
    std::uint64_t schedule(bool include_verify) const;

    Phase phase_ = Phase::query;
    std::vector<std::vector<StepEvent>> lanes_;
};

enum class QueryStatus : std::uint8_t {
    found,
    nav_failed,     // some lane fell off the index
    probe_failed,   // a required dictionary probe missed
    verify_failed,  // the candidate did not match the text
    not_found,      // no candidate node reached the query length
};

const char* to_string(QueryStatus s);

enum class ExecMode : std::uint8_t { simulated, threaded };

struct LayerStat {
    std::uint32_t k = 0;          // stride of the layer the paths came from
    std::uint64_t probes = 0;
    std::uint64_t path_nodes = 0; // sum of |pi1| + |pi2| over all pairs
    std::uint64_t max_pair_probes = 0;
    std::uint64_t max_pair_bound = 0;  // 2 * (|pi1| + |pi2|) of that pair
    bool pair_bound_ok = true;
};

struct QueryResult {
    std::vector<std::uint32_t> positions;
    std::optional<NodeId> node;
    QueryStatus status = QueryStatus::not_found;
    StepLedger ledger;
    std::vector<LayerStat> layers;
};

// Plain patricia navigation plus verification on one lane.
QueryResult seq_query(const SuffixIndex& index, const Pattern& pat);

} // namespace parsuffix
