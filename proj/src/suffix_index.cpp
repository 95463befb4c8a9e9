#include "parsuffix/suffix_index.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace parsuffix {

namespace {

std::uint64_t next_uid() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

} // namespace

std::uint32_t SequenceSet::segment_end(std::uint32_t offset) const {
    auto it = std::upper_bound(segment_starts.begin(), segment_starts.end(), offset);
    return it == segment_starts.end() ? static_cast<std::uint32_t>(seq.size()) : *it;
}

SequenceSet single_sequence(const Text& text) {
    SequenceSet s;
    s.seq = text.symbols();
    s.segment_starts = {0};
    s.text_len = text.base_len();
    s.origin.resize(s.seq.size());
    for (std::size_t i = 0; i < s.seq.size(); ++i) {
        s.origin[i] = i < text.base_len() ? static_cast<std::uint32_t>(i + 1) : 0;
    }
    return s;
}

SequenceSet interleaved_sequences(const Text& text, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("interleaved_sequences: k must be at least 1");
    }
    SequenceSet s;
    s.text_len = text.base_len();
    const auto& sym = text.symbols();
    s.seq.reserve(sym.size());
    s.origin.reserve(sym.size());
    for (std::size_t i = 0; i < k && i < sym.size(); ++i) {
        s.segment_starts.push_back(static_cast<std::uint32_t>(s.seq.size()));
        for (std::size_t p = i; p < sym.size(); p += k) {
            s.seq.push_back(sym[p]);
            s.origin.push_back(p < text.base_len() ? static_cast<std::uint32_t>(p + 1) : 0);
        }
    }
    if (s.segment_starts.empty()) {
        s.segment_starts.push_back(0);
    }
    return s;
}

NodeId SuffixIndex::child(NodeId id, Symbol s) const {
    for (NodeId c = nodes_[id].first_child; c != kNoNode; c = nodes_[c].next_sibling) {
        if (nodes_[c].label == s) {
            return c;
        }
        if (s < nodes_[c].label) {
            break;
        }
    }
    return kNoNode;
}

std::vector<NodeId> SuffixIndex::children(NodeId id) const {
    std::vector<NodeId> out;
    for (NodeId c = nodes_[id].first_child; c != kNoNode; c = nodes_[c].next_sibling) {
        out.push_back(c);
    }
    return out;
}

std::span<const Symbol> SuffixIndex::label(NodeId id) const {
    const Node& n = nodes_[id];
    return std::span<const Symbol>(seqs_.seq).subspan(n.lref, n.cum);
}

std::uint32_t SuffixIndex::shortest_len(NodeId id) const {
    if (id == root()) {
        return 0;
    }
    return nodes_[id].cum - nodes_[id].skip + 1;
}

std::span<const std::uint32_t> SuffixIndex::leaf_refs(NodeId id) const {
    const Node& n = nodes_[id];
    return std::span<const std::uint32_t>(leaf_order_).subspan(n.leaf_lo, n.leaf_hi - n.leaf_lo);
}

std::size_t SuffixIndex::height() const {
    std::vector<std::uint32_t> depth(nodes_.size(), 0);
    std::size_t best = 0;
    // Children always get larger ids than their parent except after a split,
    // so walk explicitly instead of relying on id order.
    std::vector<NodeId> stack{root()};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        best = std::max<std::size_t>(best, depth[v]);
        for (NodeId c = nodes_[v].first_child; c != kNoNode; c = nodes_[c].next_sibling) {
            depth[c] = depth[v] + 1;
            stack.push_back(c);
        }
    }
    return best;
}

IndexAssembler::IndexAssembler(IndexKind kind, SequenceSet seqs) {
    idx_.kind_ = kind;
    idx_.seqs_ = std::move(seqs);
    idx_.nodes_.emplace_back();
}

void IndexAssembler::link_child_sorted(NodeId parent, NodeId child) {
    auto& nodes = idx_.nodes_;
    const Symbol s = nodes[child].label;
    NodeId prev = kNoNode;
    NodeId cur = nodes[parent].first_child;
    while (cur != kNoNode && nodes[cur].label < s) {
        prev = cur;
        cur = nodes[cur].next_sibling;
    }
    if (cur != kNoNode && nodes[cur].label == s) {
        throw std::logic_error("duplicate discriminator under one node");
    }
    nodes[child].next_sibling = cur;
    if (prev == kNoNode) {
        nodes[parent].first_child = child;
    } else {
        nodes[prev].next_sibling = child;
    }
}

NodeId IndexAssembler::add_child(NodeId parent, Symbol label, std::uint32_t skip,
                                 std::uint32_t lref) {
    auto& nodes = idx_.nodes_;
    const auto id = static_cast<NodeId>(nodes.size());
    Node n;
    n.parent = parent;
    n.label = label;
    n.skip = skip;
    n.cum = nodes[parent].cum + skip;
    n.lref = lref;
    nodes.push_back(n);
    link_child_sorted(parent, id);
    return id;
}

NodeId IndexAssembler::split_edge(NodeId id, std::uint32_t len) {
    auto& nodes = idx_.nodes_;
    if (len == 0 || len >= nodes[id].skip) {
        throw std::logic_error("split_edge: split point outside the edge");
    }
    const NodeId parent = nodes[id].parent;
    const auto mid = static_cast<NodeId>(nodes.size());
    Node m;
    m.parent = parent;
    m.label = nodes[id].label;
    m.skip = len;
    m.cum = nodes[parent].cum + len;
    m.lref = nodes[id].lref;
    m.first_child = id;
    m.next_sibling = nodes[id].next_sibling;
    nodes.push_back(m);

    // mid takes id's slot in the parent's ordered child list
    if (nodes[parent].first_child == id) {
        nodes[parent].first_child = mid;
    } else {
        NodeId c = nodes[parent].first_child;
        while (nodes[c].next_sibling != id) {
            c = nodes[c].next_sibling;
        }
        nodes[c].next_sibling = mid;
    }
    nodes[id].parent = mid;
    nodes[id].skip -= len;
    nodes[id].label = idx_.seqs_.seq[nodes[id].lref + nodes[mid].cum];
    nodes[id].next_sibling = kNoNode;
    return mid;
}

NodeId IndexAssembler::append_raw(const Node& n) {
    const auto id = static_cast<NodeId>(idx_.nodes_.size());
    idx_.nodes_.push_back(n);
    return id;
}

SuffixIndex IndexAssembler::finish() {
    auto& nodes = idx_.nodes_;
    auto& order = idx_.leaf_order_;
    order.clear();
    // Iterative DFS in child order; a node's own suffix precedes its subtree.
    std::vector<std::pair<NodeId, bool>> stack{{SuffixIndex::root(), false}};
    while (!stack.empty()) {
        auto [v, done] = stack.back();
        stack.pop_back();
        if (done) {
            nodes[v].leaf_hi = static_cast<std::uint32_t>(order.size());
            continue;
        }
        nodes[v].leaf_lo = static_cast<std::uint32_t>(order.size());
        if (nodes[v].ref != kNoRef) {
            order.push_back(nodes[v].ref);
        }
        stack.push_back({v, true});
        std::vector<NodeId> kids;
        for (NodeId c = nodes[v].first_child; c != kNoNode; c = nodes[c].next_sibling) {
            kids.push_back(c);
        }
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
            stack.push_back({*it, false});
        }
    }
    for (auto& n : nodes) {
        if (n.leaf_hi > n.leaf_lo) {
            n.lref = order[n.leaf_lo];
        }
    }
    idx_.uid_ = next_uid();
    return std::move(idx_);
}

SuffixIndex build_suffix_trie(const Text& text) {
    return build_suffix_trie(single_sequence(text));
}

SuffixIndex build_suffix_trie(SequenceSet seqs) {
    if (seqs.seq.empty()) {
        throw std::invalid_argument("build_suffix_trie: empty text");
    }
    IndexAssembler as(IndexKind::trie, std::move(seqs));
    const SequenceSet& s = as.index().sequences();
    const auto total = static_cast<std::uint32_t>(s.seq.size());
    for (std::uint32_t i = 0; i < total; ++i) {
        const std::uint32_t end = s.segment_end(i);
        NodeId cur = SuffixIndex::root();
        for (std::uint32_t p = i; p < end; ++p) {
            NodeId next = as.index().child(cur, s.seq[p]);
            if (next == kNoNode) {
                next = as.add_child(cur, s.seq[p], 1, i);
            }
            cur = next;
        }
        // distinct suffixes spell distinct strings, so each node ends at most one
        as.nodes()[cur].ref = i;
    }
    return as.finish();
}

NavOutcome navigate(const SuffixIndex& index, std::span<const Symbol> query) {
    NodeId cur = SuffixIndex::root();
    const std::size_t m = query.size();
    while (index.cum(cur) < m) {
        const NodeId next = index.child(cur, query[index.cum(cur)]);
        if (next == kNoNode) {
            return {cur, index.cum(cur), NavStatus::fell_off};
        }
        cur = next;
    }
    return {cur, m, NavStatus::full_match};
}

NavOutcome navigate(const SuffixIndex& index, const Pattern& pat) {
    return navigate(index, pat.symbols());
}

NavPath record_path(const SuffixIndex& index, std::span<const Symbol> query) {
    NavPath path;
    NodeId cur = SuffixIndex::root();
    path.nodes.push_back({cur, 0});
    while (index.cum(cur) < query.size()) {
        const NodeId next = index.child(cur, query[index.cum(cur)]);
        if (next == kNoNode) {
            path.status = NavStatus::fell_off;
            return path;
        }
        cur = next;
        path.nodes.push_back({cur, index.cum(cur)});
    }
    path.status = NavStatus::full_match;
    return path;
}

NavPath record_path(const SuffixIndex& index, const Pattern& pat) {
    return record_path(index, pat.symbols());
}

std::vector<std::uint32_t> occurrences(const SuffixIndex& index, NodeId node) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t off : index.leaf_refs(node)) {
        const std::uint32_t pos = index.text_position(off);
        if (pos != 0) {
            out.push_back(pos);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool verify_range(const SuffixIndex& index, NodeId node, std::span<const Symbol> query,
                  std::size_t from, std::size_t to) {
    const std::uint32_t r = index.node(node).lref;
    const std::uint32_t end = index.sequences().segment_end(r);
    if (r + to > end) {
        return false;
    }
    const auto seq = index.seq();
    for (std::size_t i = from; i < to; ++i) {
        if (seq[r + i] != query[i]) {
            return false;
        }
    }
    return true;
}

bool verify_against_text(const SuffixIndex& index, NodeId node, std::span<const Symbol> query) {
    if (query.empty()) {
        throw std::invalid_argument("verify_against_text: empty query");
    }
    return verify_range(index, node, query, 0, query.size());
}

bool verify_against_text(const SuffixIndex& index, NodeId node, const Pattern& pat) {
    return verify_against_text(index, node, pat.symbols());
}

} // namespace parsuffix
