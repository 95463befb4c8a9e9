#pragma once

#include <cstdint>
#include <vector>

#include "parsuffix/suffix_index.hpp"

namespace parsuffix {

// Suffix links of a suffix tree plus binary-lifting tables over both the
// suffix-links tree and the tree itself.
class AncestryIndex {
public:
    AncestryIndex() = default;

    // links[v] for every node; kNoNode for the root.
    AncestryIndex(const SuffixIndex& tree, std::vector<NodeId> links);

    std::uint64_t owner() const { return owner_; }
    std::size_t size() const { return links_.size(); }
    NodeId suffix_link(NodeId v) const { return links_[v]; }
    const std::vector<NodeId>& links() const { return links_; }

    // Depth in the suffix-links tree (equals the node's cum).
    std::uint32_t depth(NodeId v) const { return cum_[v]; }

    // Node reached by following exactly d suffix links.
    NodeId level_ancestor_sl(NodeId v, std::uint32_t d) const;

    // Drops d leading symbols, then climbs to the shallowest node whose cum
    // is still >= needed_len. needed_len == 0 gives the root.
    NodeId shorten(NodeId v, std::uint32_t d, std::uint32_t needed_len) const;

    // Shallowest ancestor-or-self with cum >= len.
    NodeId ancestor_covering(NodeId v, std::uint32_t len) const;

private:
    std::uint64_t owner_ = 0;
    std::vector<NodeId> links_;
    std::vector<std::uint32_t> cum_;
    std::vector<std::vector<NodeId>> sl_up_;    // sl_up_[j][v]: 2^j links from v
    std::vector<std::vector<NodeId>> tree_up_;  // tree_up_[j][v]: 2^j parents up
};

// Computes every link by walking the node's longest string minus its first
// symbol from the root. Throws std::logic_error if a walk does not end
// exactly on a node.
std::vector<NodeId> compute_suffix_links(const SuffixIndex& tree);

AncestryIndex build_ancestry(const SuffixIndex& tree);

} // namespace parsuffix
