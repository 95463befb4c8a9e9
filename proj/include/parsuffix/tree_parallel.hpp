#pragma once

#include <optional>
#include <vector>

#include "parsuffix/ancestry.hpp"
#include "parsuffix/halving_dict.hpp"
#include "parsuffix/step_ledger.hpp"

namespace parsuffix {

// One lane-1 node as handed to lane 2.
struct LaneOneNode {
    NodeId node = kNoNode;
    EventRef event;
};

// Lane-2 position: `node` lies on the walk of Q[offset+1 ..].
struct LaneTwoState {
    NodeId node = SuffixIndex::root();
    std::uint32_t offset = 0;
};

// Everything lane 2 did, for inspection by tests.
struct TwoLaneTrace {
    struct Probe {
        NodeId b1;
        NodeId b2;
        std::optional<NodeId> hit;
    };
    std::vector<LaneTwoState> states;  // after each realignment onto a lane-1 node
    std::vector<Probe> probes;
};

// Range [lo, hi] of right-part lengths worth probing against the lane-1
// node x; empty when lo > hi.
struct ProbeWindow {
    std::uint32_t lo = 1;
    std::uint32_t hi = 0;
    bool empty() const { return lo > hi; }
};
ProbeWindow probe_window(std::uint32_t cum_parent, std::uint32_t cum_x, std::uint32_t m);

// Two-lane suffix tree query (p = 2). Lane 1 walks the first half of Q;
// lane 2 follows behind it one node late, realigning by suffix links and
// probing the halving dictionary. Requires m >= 2.
QueryResult par_query_tree2(const SuffixIndex& tree, const AncestryIndex& anc,
                            const PairDict& dict, const Pattern& pat,
                            ExecMode mode = ExecMode::simulated, TwoLaneTrace* trace = nullptr);

} // namespace parsuffix
