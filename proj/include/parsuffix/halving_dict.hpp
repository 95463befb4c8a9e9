#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "parsuffix/suffix_index.hpp"

namespace parsuffix {

// (a, b) -> node. Keys come from one index, values may live in another
// (layer dictionaries map upper-layer pairs to lower-layer nodes).
class PairDict {
public:
    PairDict() = default;
    PairDict(std::uint64_t key_owner, std::uint64_t value_owner)
        : key_owner_(key_owner), value_owner_(value_owner) {}

    std::uint64_t key_owner() const { return key_owner_; }
    std::uint64_t value_owner() const { return value_owner_; }
    std::size_t size() const { return map_.size(); }

    // False if the key is already present.
    bool insert(NodeId a, NodeId b, NodeId value);

    // `keys` must be the index the dictionary was built over; a different
    // index throws std::invalid_argument.
    std::optional<NodeId> probe(const SuffixIndex& keys, NodeId a, NodeId b) const;

    // (a, b, value) sorted by key.
    std::vector<std::tuple<NodeId, NodeId, NodeId>> entries() const;

private:
    static std::uint64_t key(NodeId a, NodeId b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    std::uint64_t key_owner_ = 0;
    std::uint64_t value_owner_ = 0;
    std::unordered_map<std::uint64_t, NodeId> map_;
};

// One entry per non-root trie node: (ancestor at depth ceil(d/2),
// node of the remaining right half) -> node.
PairDict build_trie_halving_dict(const SuffixIndex& trie);

// One entry per tree node, keyed by the split of its shortest string S at
// the shallowest ancestor covering ceil(|S|/2) symbols.
PairDict build_tree_halving_dict(const SuffixIndex& tree);

// First node on the walk of `s` from the root whose cum reaches |s|.
// Root for an empty s, kNoNode if the walk falls off.
NodeId locus(const SuffixIndex& index, std::span<const Symbol> s);

} // namespace parsuffix
