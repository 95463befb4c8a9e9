#include "parsuffix/trie_parallel.hpp"

#include <bit>
#include <stdexcept>
#include <thread>

namespace parsuffix {

bool is_power_of_two(std::size_t x) { return std::has_single_bit(x); }

std::size_t floor_log2(std::size_t x) { return x == 0 ? 0 : std::bit_width(x) - 1; }

SubqueryAssignment assign_subqueries(std::size_t m, std::size_t p) {
    if (!is_power_of_two(p)) {
        throw std::invalid_argument("processor count must be a power of two");
    }
    if (p >= 2 * m) {
        throw std::invalid_argument("processor count must be below 2m");
    }
    SubqueryAssignment a;
    a.p = p;
    a.lengths = {m};
    while (a.lengths.size() < p) {
        std::vector<std::size_t> next;
        next.reserve(a.lengths.size() * 2);
        for (std::size_t len : a.lengths) {
            next.push_back((len + 1) / 2);
            next.push_back(len / 2);
        }
        a.lengths = std::move(next);
    }
    std::size_t pos = 1;
    for (std::size_t len : a.lengths) {
        a.offsets.push_back(pos);
        pos += len;
    }
    return a;
}

namespace {

struct LaneOutcome {
    NodeId node = SuffixIndex::root();
    bool ok = true;
};

LaneOutcome navigate_chunk(const SuffixIndex& trie, std::span<const Symbol> chunk,
                           std::uint32_t lane, StepLedger& ledger) {
    LaneOutcome out;
    for (Symbol c : chunk) {
        ledger.nav(lane, 1);
        const NodeId next = trie.child(out.node, c);
        if (next == kNoNode) {
            out.ok = false;
            return out;
        }
        out.node = next;
    }
    return out;
}

} // namespace

QueryResult par_query_trie(const SuffixIndex& trie, const PairDict& dict, const Pattern& pat,
                           std::size_t p, ExecMode mode) {
    if (trie.kind() != IndexKind::trie) {
        throw std::invalid_argument("par_query_trie needs a suffix trie");
    }
    const SubqueryAssignment a = assign_subqueries(pat.size(), p);
    QueryResult res;
    res.ledger = StepLedger(p);
    const auto q = std::span<const Symbol>(pat.symbols());

    std::vector<LaneOutcome> lanes(p);
    auto run_lane = [&](std::size_t i) {
        lanes[i] = navigate_chunk(trie, q.subspan(a.offsets[i] - 1, a.lengths[i]),
                                  static_cast<std::uint32_t>(i), res.ledger);
    };
    if (mode == ExecMode::threaded) {
        std::vector<std::jthread> workers;
        for (std::size_t i = 0; i < p; ++i) {
            workers.emplace_back(run_lane, i);
        }
    } else {
        for (std::size_t i = 0; i < p; ++i) {
            run_lane(i);
        }
    }
    for (const LaneOutcome& l : lanes) {
        if (!l.ok) {
            res.status = QueryStatus::nav_failed;
            return res;
        }
    }

    std::vector<NodeId> rep(p);
    for (std::size_t i = 0; i < p; ++i) {
        rep[i] = lanes[i].node;
    }
    for (std::size_t j = 1; j < p; j *= 2) {
        std::vector<std::optional<NodeId>> merged(p);
        auto merge = [&](std::size_t g) {
            const auto lane = static_cast<std::uint32_t>(g);
            const auto right = static_cast<std::uint32_t>(g + j);
            std::vector<EventRef> deps;
            if (auto e = res.ledger.last(right)) {
                deps.push_back(*e);
            }
            res.ledger.probe(lane, std::move(deps));
            merged[g] = dict.probe(trie, rep[g], rep[g + j]);
        };
        if (mode == ExecMode::threaded) {
            std::vector<std::jthread> workers;
            for (std::size_t g = 0; g < p; g += 2 * j) {
                workers.emplace_back(merge, g);
            }
        } else {
            for (std::size_t g = 0; g < p; g += 2 * j) {
                merge(g);
            }
        }
        for (std::size_t g = 0; g < p; g += 2 * j) {
            if (!merged[g]) {
                res.status = QueryStatus::probe_failed;
                return res;
            }
            rep[g] = *merged[g];
        }
    }

    res.node = rep[0];
    res.positions = occurrences(trie, rep[0]);
    res.status = QueryStatus::found;
    return res;
}

} // namespace parsuffix
