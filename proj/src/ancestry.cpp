#include "parsuffix/ancestry.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace parsuffix {

namespace {

std::vector<std::vector<NodeId>> lift(std::vector<NodeId> base, std::uint32_t max_steps) {
    const std::size_t levels = std::bit_width(std::max<std::uint32_t>(max_steps, 1));
    std::vector<std::vector<NodeId>> up;
    up.push_back(std::move(base));
    for (std::size_t j = 1; j < levels; ++j) {
        const auto& prev = up.back();
        std::vector<NodeId> next(prev.size(), kNoNode);
        for (std::size_t v = 0; v < prev.size(); ++v) {
            if (prev[v] != kNoNode) {
                next[v] = prev[prev[v]];
            }
        }
        up.push_back(std::move(next));
    }
    return up;
}

} // namespace

std::vector<NodeId> compute_suffix_links(const SuffixIndex& tree) {
    if (tree.kind() != IndexKind::tree) {
        throw std::invalid_argument("suffix links need a suffix tree");
    }
    std::vector<NodeId> links(tree.size(), kNoNode);
    const auto seq = tree.seq();
    for (NodeId v = 1; v < tree.size(); ++v) {
        const std::uint32_t target = tree.cum(v) - 1;
        const std::uint32_t from = tree.node(v).lref + 1;
        NodeId cur = SuffixIndex::root();
        while (tree.cum(cur) < target) {
            cur = tree.child(cur, seq[from + tree.cum(cur)]);
            if (cur == kNoNode) {
                break;
            }
        }
        if (cur == kNoNode || tree.cum(cur) != target) {
            throw std::logic_error("suffix link target missing for node " + std::to_string(v));
        }
        links[v] = cur;
    }
    return links;
}

AncestryIndex build_ancestry(const SuffixIndex& tree) {
    return AncestryIndex(tree, compute_suffix_links(tree));
}

AncestryIndex::AncestryIndex(const SuffixIndex& tree, std::vector<NodeId> links)
    : owner_(tree.uid()), links_(std::move(links)) {
    if (links_.size() != tree.size()) {
        throw std::invalid_argument("suffix link table size mismatch");
    }
    std::uint32_t max_cum = 0;
    std::vector<NodeId> parents(tree.size(), kNoNode);
    cum_.resize(tree.size());
    for (NodeId v = 0; v < tree.size(); ++v) {
        cum_[v] = tree.cum(v);
        parents[v] = tree.parent(v);
        max_cum = std::max(max_cum, cum_[v]);
        if (v != SuffixIndex::root() &&
            (links_[v] >= tree.size() || cum_[v] != tree.cum(links_[v]) + 1)) {
            throw std::invalid_argument("malformed suffix link at node " + std::to_string(v));
        }
    }
    sl_up_ = lift(links_, max_cum);
    tree_up_ = lift(std::move(parents), max_cum);
}

NodeId AncestryIndex::level_ancestor_sl(NodeId v, std::uint32_t d) const {
    if (d > cum_[v]) {
        throw std::out_of_range("level ancestor past the root");
    }
    for (std::size_t j = 0; d != 0; ++j, d >>= 1) {
        if (d & 1U) {
            v = sl_up_[j][v];
        }
    }
    return v;
}

NodeId AncestryIndex::ancestor_covering(NodeId v, std::uint32_t len) const {
    if (cum_[v] < len) {
        return v;
    }
    for (std::size_t j = tree_up_.size(); j-- > 0;) {
        const NodeId a = tree_up_[j][v];
        if (a != kNoNode && cum_[a] >= len) {
            v = a;
        }
    }
    return v;
}

NodeId AncestryIndex::shorten(NodeId v, std::uint32_t d, std::uint32_t needed_len) const {
    const NodeId u = level_ancestor_sl(v, d);
    if (needed_len == 0) {
        return SuffixIndex::root();
    }
    return ancestor_covering(u, needed_len);
}

} // namespace parsuffix
