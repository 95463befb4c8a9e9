#include "parsuffix/halving_dict.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace parsuffix {

bool PairDict::insert(NodeId a, NodeId b, NodeId value) {
    return map_.emplace(key(a, b), value).second;
}

std::optional<NodeId> PairDict::probe(const SuffixIndex& keys, NodeId a, NodeId b) const {
    if (keys.uid() != key_owner_) {
        throw std::invalid_argument("probe with nodes from a foreign index");
    }
    if (!keys.contains(a) || !keys.contains(b)) {
        throw std::invalid_argument("probe with an out-of-range node id");
    }
    auto it = map_.find(key(a, b));
    if (it == map_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::tuple<NodeId, NodeId, NodeId>> PairDict::entries() const {
    std::vector<std::tuple<NodeId, NodeId, NodeId>> out;
    out.reserve(map_.size());
    for (const auto& [k, v] : map_) {
        out.emplace_back(static_cast<NodeId>(k >> 32), static_cast<NodeId>(k & 0xFFFFFFFFU), v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

NodeId locus(const SuffixIndex& index, std::span<const Symbol> s) {
    NodeId cur = SuffixIndex::root();
    while (index.cum(cur) < s.size()) {
        cur = index.child(cur, s[index.cum(cur)]);
        if (cur == kNoNode) {
            return kNoNode;
        }
    }
    return cur;
}

PairDict build_trie_halving_dict(const SuffixIndex& trie) {
    if (trie.kind() != IndexKind::trie) {
        throw std::invalid_argument("trie halving dictionary needs a suffix trie");
    }
    const SequenceSet& s = trie.sequences();
    const auto total = static_cast<std::uint32_t>(s.seq.size());

    // path_start[i] .. : node at every depth along suffix i
    std::vector<std::uint64_t> path_start(total + 1, 0);
    for (std::uint32_t i = 0; i < total; ++i) {
        path_start[i + 1] = path_start[i] + (s.segment_end(i) - i) + 1;
    }
    std::vector<NodeId> paths(path_start[total]);
    for (std::uint32_t i = 0; i < total; ++i) {
        const std::uint32_t end = s.segment_end(i);
        NodeId cur = SuffixIndex::root();
        paths[path_start[i]] = cur;
        for (std::uint32_t p = i; p < end; ++p) {
            cur = trie.child(cur, s.seq[p]);
            paths[path_start[i] + (p - i) + 1] = cur;
        }
    }

    PairDict dict(trie.uid(), trie.uid());
    for (NodeId w = 1; w < trie.size(); ++w) {
        const std::uint32_t r = trie.node(w).lref;
        const std::uint32_t d = trie.cum(w);
        const std::uint32_t h = (d + 1) / 2;
        const NodeId a1 = paths[path_start[r] + h];
        const NodeId a2 = d == h ? SuffixIndex::root() : paths[path_start[r + h] + (d - h)];
        if (!dict.insert(a1, a2, w)) {
            throw std::logic_error("trie halving pair collision at node " + std::to_string(w));
        }
    }
    return dict;
}

PairDict build_tree_halving_dict(const SuffixIndex& tree) {
    if (tree.kind() != IndexKind::tree) {
        throw std::invalid_argument("tree halving dictionary needs a suffix tree");
    }
    const auto seq = tree.seq();
    PairDict dict(tree.uid(), tree.uid());
    dict.insert(SuffixIndex::root(), SuffixIndex::root(), SuffixIndex::root());
    for (NodeId w = 1; w < tree.size(); ++w) {
        const std::uint32_t len = tree.shortest_len(w);
        const std::uint32_t half = (len + 1) / 2;
        NodeId b1 = w;
        while (tree.cum(tree.parent(b1)) >= half) {
            b1 = tree.parent(b1);
        }
        const std::uint32_t bhat = tree.cum(b1);
        NodeId b2 = SuffixIndex::root();
        if (bhat < len) {
            const std::uint32_t r = tree.node(w).lref;
            b2 = locus(tree, seq.subspan(r + bhat, len - bhat));
            if (b2 == kNoNode) {
                throw std::logic_error("tree halving pair has no right node at " + std::to_string(w));
            }
        }
        if (!dict.insert(b1, b2, w)) {
            throw std::logic_error("tree halving pair collision at node " + std::to_string(w));
        }
    }
    return dict;
}

} // namespace parsuffix
