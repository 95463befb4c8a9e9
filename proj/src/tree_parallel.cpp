#include "parsuffix/tree_parallel.hpp"

#include <algorithm>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace parsuffix {

ProbeWindow probe_window(std::uint32_t cum_parent, std::uint32_t cum_x, std::uint32_t m) {
    const std::uint32_t h = (m + 1) / 2;
    const std::uint32_t shortest = std::max({2 * cum_parent + 1, h + 1, cum_x + 1});
    ProbeWindow w;
    if (cum_x >= m) {
        return w;
    }
    w.lo = shortest - cum_x;
    w.hi = std::min(cum_x, m - cum_x);
    return w;
}

namespace {

enum class LaneEnd : std::uint8_t { running, fell_off, leaf, reached_m, done };

struct LaneOneResult {
    LaneEnd end = LaneEnd::done;
    NodeId last = SuffixIndex::root();
};

// Producer side: walks Q until cum >= ceil(m/2), emitting every node.
template <typename Emit>
LaneOneResult run_lane_one(const SuffixIndex& tree, std::span<const Symbol> q,
                           StepLedger& ledger, Emit&& emit) {
    const auto m = static_cast<std::uint32_t>(q.size());
    const std::uint32_t h = (m + 1) / 2;
    LaneOneResult r;
    NodeId cur = SuffixIndex::root();
    while (tree.cum(cur) < h) {
        const NodeId next = tree.child(cur, q[tree.cum(cur)]);
        if (next == kNoNode) {
            r.end = LaneEnd::fell_off;
            r.last = cur;
            return r;
        }
        const std::uint32_t chars = std::min(tree.cum(next), h) - tree.cum(cur);
        const EventRef ev = ledger.nav(0, chars);
        cur = next;
        emit(LaneOneNode{cur, ev});
        if (tree.is_leaf(cur)) {
            break;
        }
    }
    r.last = cur;
    if (tree.cum(cur) >= m) {
        r.end = LaneEnd::reached_m;
    } else if (tree.is_leaf(cur)) {
        r.end = LaneEnd::leaf;
    }
    return r;
}

class LaneTwo {
public:
    LaneTwo(const SuffixIndex& tree, const AncestryIndex& anc, const PairDict& dict,
            std::span<const Symbol> q, StepLedger& ledger, TwoLaneTrace* trace)
        : tree_(tree), anc_(anc), dict_(dict), q_(q), ledger_(ledger), trace_(trace),
          m_(static_cast<std::uint32_t>(q.size())) {
        st_.offset = (m_ + 3) / 4;
        high_water_ = st_.offset;
    }

    LaneEnd end() const { return end_; }
    bool active() const { return end_ == LaneEnd::running; }
    const LaneTwoState& state() const { return st_; }
    std::optional<NodeId> best() const { return best_; }

    // Independent start on Q[ceil(m/4)+1 ..] before any lane-1 node arrives.
    void warm_up() {
        const std::uint32_t limit = st_.offset + 1;
        while (active() && st_.offset + tree_.cum(st_.node) < m_) {
            const NodeId next = tree_.child(st_.node, q_[st_.offset + tree_.cum(st_.node)]);
            if (next == kNoNode) {
                end_ = LaneEnd::fell_off;
                return;
            }
            if (tree_.cum(next) > limit) {
                return;
            }
            hop(next);
        }
    }

    void consume(const LaneOneNode& x) {
        if (!active()) {
            return;
        }
        const std::uint32_t cx = tree_.cum(x.node);
        const ProbeWindow w = probe_window(tree_.cum(tree_.parent(x.node)), cx, m_);
        if (w.empty()) {
            return;
        }
        if (cx < st_.offset) {
            throw std::logic_error("lane 2 is ahead of lane 1");
        }
        const std::uint32_t d = cx - st_.offset;
        const std::uint32_t len = tree_.cum(st_.node);
        if (d >= len) {
            st_.node = SuffixIndex::root();
        } else if (len - d >= w.lo) {
            st_.node = anc_.shorten(st_.node, d, w.lo);
        } else {
            st_.node = anc_.level_ancestor_sl(st_.node, d);
        }
        st_.offset = cx;
        // lane 2 never compares symbols before its own offset
        high_water_ = std::max(high_water_, cx);
        ledger_.record(1, StepKind::shorten, 1, 1, {x.event});

        while (tree_.cum(st_.node) < w.lo) {
            if (!step()) {
                return;
            }
        }
        if (trace_) {
            trace_->states.push_back(st_);
        }
        probe(x);
        while (tree_.cum(st_.node) < w.hi) {
            if (!step()) {
                return;
            }
            probe(x);
        }
    }

    // Seq offset of the only possible occurrence after a lane-2 leaf.
    std::optional<std::uint32_t> leaf_candidate() const {
        const std::uint32_t ref = tree_.node(st_.node).ref;
        if (ref == kNoRef || ref < st_.offset) {
            return std::nullopt;
        }
        return ref - st_.offset;
    }

private:
    void hop(NodeId next) {
        const std::uint32_t reach = std::min(st_.offset + tree_.cum(next), m_);
        const std::uint32_t chars = reach > high_water_ ? reach - high_water_ : 0;
        high_water_ = std::max(high_water_, reach);
        ledger_.nav(1, chars);
        st_.node = next;
        if (tree_.is_leaf(next)) {
            end_ = LaneEnd::leaf;
        }
    }

    bool step() {
        const std::uint32_t pos = st_.offset + tree_.cum(st_.node);
        const NodeId next = pos < m_ ? tree_.child(st_.node, q_[pos]) : kNoNode;
        if (next == kNoNode) {
            end_ = LaneEnd::fell_off;
            return false;
        }
        hop(next);
        return active();
    }

    void probe(const LaneOneNode& x) {
        std::vector<EventRef> deps{x.event};
        if (auto e = ledger_.last(1)) {
            deps.push_back(*e);
        }
        ledger_.probe(1, std::move(deps), false);
        const auto hit = dict_.probe(tree_, x.node, st_.node);
        if (trace_) {
            trace_->probes.push_back({x.node, st_.node, hit});
        }
        if (hit && tree_.shortest_len(*hit) <= m_ &&
            (!best_ || tree_.cum(*hit) > tree_.cum(*best_))) {
            best_ = *hit;
        }
    }

    const SuffixIndex& tree_;
    const AncestryIndex& anc_;
    const PairDict& dict_;
    std::span<const Symbol> q_;
    StepLedger& ledger_;
    TwoLaneTrace* trace_;
    const std::uint32_t m_;
    LaneTwoState st_;
    std::uint32_t high_water_ = 0;
    LaneEnd end_ = LaneEnd::running;
    std::optional<NodeId> best_;
};

// Bounded hand-off from lane 1 to lane 2. The consumer may quit early, after
// which pushes are dropped instead of blocking.
class NodeQueue {
public:
    explicit NodeQueue(std::size_t capacity) : capacity_(capacity) {}

    void push(const LaneOneNode& x) {
        std::unique_lock lock(mu_);
        not_full_.wait(lock, [&] { return items_.size() < capacity_ || abandoned_; });
        if (abandoned_) {
            return;
        }
        items_.push_back(x);
        not_empty_.notify_one();
    }

    void close() {
        std::lock_guard lock(mu_);
        closed_ = true;
        not_empty_.notify_all();
    }

    void abandon() {
        std::lock_guard lock(mu_);
        abandoned_ = true;
        not_full_.notify_all();
    }

    std::optional<LaneOneNode> pop() {
        std::unique_lock lock(mu_);
        not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
        if (items_.empty()) {
            return std::nullopt;
        }
        LaneOneNode x = items_.front();
        items_.pop_front();
        not_full_.notify_one();
        return x;
    }

private:
    std::mutex mu_;
    std::condition_variable not_full_;
    std::condition_variable not_empty_;
    std::deque<LaneOneNode> items_;
    std::size_t capacity_;
    bool closed_ = false;
    bool abandoned_ = false;
};

bool verify_at(const SuffixIndex& tree, std::uint32_t start, std::span<const Symbol> q,
               std::size_t from, std::size_t to) {
    const std::uint32_t end = tree.sequences().segment_end(start);
    if (start + to > end) {
        return false;
    }
    const auto seq = tree.seq();
    for (std::size_t i = from; i < to; ++i) {
        if (seq[start + i] != q[i]) {
            return false;
        }
    }
    return true;
}

} // namespace

QueryResult par_query_tree2(const SuffixIndex& tree, const AncestryIndex& anc,
                            const PairDict& dict, const Pattern& pat, ExecMode mode,
                            TwoLaneTrace* trace) {
    if (tree.kind() != IndexKind::tree) {
        throw std::invalid_argument("par_query_tree2 needs a suffix tree");
    }
    if (pat.size() < 2) {
        throw std::invalid_argument("par_query_tree2 needs m >= 2 (p must stay below 2m)");
    }
    if (anc.owner() != tree.uid() || dict.key_owner() != tree.uid()) {
        throw std::invalid_argument("ancestry or dictionary built over a different tree");
    }
    const auto q = std::span<const Symbol>(pat.symbols());
    const auto m = static_cast<std::uint32_t>(q.size());
    const std::uint32_t h = (m + 1) / 2;

    QueryResult res;
    res.ledger = StepLedger(2);
    LaneTwo two(tree, anc, dict, q, res.ledger, trace);
    LaneOneResult one;

    if (mode == ExecMode::threaded) {
        NodeQueue queue(16);
        std::jthread producer([&] {
            one = run_lane_one(tree, q, res.ledger, [&](const LaneOneNode& x) { queue.push(x); });
            queue.close();
        });
        try {
            two.warm_up();
            while (auto x = queue.pop()) {
                two.consume(*x);
                if (!two.active()) {
                    break;
                }
            }
        } catch (...) {
            queue.abandon();
            throw;
        }
        queue.abandon();
    } else {
        std::vector<LaneOneNode> emitted;
        one = run_lane_one(tree, q, res.ledger, [&](const LaneOneNode& x) { emitted.push_back(x); });
        two.warm_up();
        for (const LaneOneNode& x : emitted) {
            two.consume(x);
            if (!two.active()) {
                break;
            }
        }
    }

    std::optional<NodeId> node;
    std::optional<std::uint32_t> start;
    switch (one.end) {
    case LaneEnd::fell_off:
        res.status = QueryStatus::nav_failed;
        return res;
    case LaneEnd::reached_m:
        node = one.last;
        break;
    case LaneEnd::leaf:
        start = tree.node(one.last).ref;
        break;
    default:
        if (two.end() == LaneEnd::fell_off) {
            res.status = QueryStatus::nav_failed;
            return res;
        }
        if (two.end() == LaneEnd::leaf) {
            start = two.leaf_candidate();
            if (!start) {
                res.status = QueryStatus::not_found;
                return res;
            }
        } else if (two.best() && tree.cum(*two.best()) >= m) {
            node = two.best();
        } else {
            res.status = QueryStatus::probe_failed;
            return res;
        }
    }

    const std::uint32_t r = node ? tree.node(*node).lref : *start;
    res.ledger.set_phase(Phase::verify);
    std::vector<EventRef> both;
    for (std::uint32_t l = 0; l < 2; ++l) {
        if (auto e = res.ledger.last(l)) {
            both.push_back(*e);
        }
    }
    res.ledger.record(0, StepKind::compare, h, h, both);
    res.ledger.record(1, StepKind::compare, m - h, m - h, both);
    if (!verify_at(tree, r, q, 0, h) || !verify_at(tree, r, q, h, m)) {
        res.status = QueryStatus::verify_failed;
        return res;
    }
    if (node) {
        res.node = node;
        res.positions = occurrences(tree, *node);
    } else if (const std::uint32_t pos = tree.text_position(r); pos != 0) {
        res.positions = {pos};
    }
    res.status = QueryStatus::found;
    return res;
}

} // namespace parsuffix
