#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "parsuffix/text.hpp"

namespace parsuffix {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr std::uint32_t kNoRef = std::numeric_limits<std::uint32_t>::max();

enum class IndexKind : std::uint8_t { trie = 0, tree = 1 };

// The strings an index is built over, stored back to back in one buffer.
// A plain index has a single segment; an interleaved layer has one segment
// per subsequence. Suffixes never cross a segment boundary.
struct SequenceSet {
    SymbolString seq;
    std::vector<std::uint32_t> segment_starts;  // ascending, first is 0
    std::vector<std::uint32_t> origin;          // 1-based text position, 0 for delimiters
    std::size_t text_len = 0;                   // n, base symbols of the source text

    std::uint32_t segment_end(std::uint32_t offset) const;
};

SequenceSet single_sequence(const Text& text);

// Subsequence i of `text` (which already carries k delimiters) becomes
// segment i. Offset o of segment i maps back to text position i + o*k.
SequenceSet interleaved_sequences(const Text& text, std::size_t k);

struct Node {
    NodeId parent = kNoNode;
    NodeId first_child = kNoNode;
    NodeId next_sibling = kNoNode;
    Symbol label{};              // discriminator: first symbol of the incoming edge
    std::uint32_t skip = 0;      // incoming edge length, 0 for the root
    std::uint32_t cum = 0;       // cumulative skip value
    std::uint32_t lref = 0;      // seq offset of the leftmost suffix below
    std::uint32_t ref = kNoRef;  // seq offset of the suffix ending here
    std::uint32_t leaf_lo = 0;   // range into SuffixIndex::leaf_refs()
    std::uint32_t leaf_hi = 0;
};

class SuffixIndex {
public:
    static constexpr NodeId root() { return 0; }

    IndexKind kind() const { return kind_; }
    std::uint64_t uid() const { return uid_; }
    const SequenceSet& sequences() const { return seqs_; }
    std::span<const Symbol> seq() const { return seqs_.seq; }
    std::size_t size() const { return nodes_.size(); }
    bool contains(NodeId id) const { return id < nodes_.size(); }

    const Node& node(NodeId id) const { return nodes_[id]; }
    std::uint32_t cum(NodeId id) const { return nodes_[id].cum; }
    NodeId parent(NodeId id) const { return nodes_[id].parent; }
    bool is_leaf(NodeId id) const { return nodes_[id].first_child == kNoNode; }

    // kNoNode if there is no edge starting with s.
    NodeId child(NodeId id, Symbol s) const;
    std::vector<NodeId> children(NodeId id) const;

    // Longest string the node corresponds to.
    std::span<const Symbol> label(NodeId id) const;
    // Length of the shortest string the node corresponds to; 0 for the root.
    std::uint32_t shortest_len(NodeId id) const;

    // Seq offsets of all suffixes below the node, in child order.
    std::span<const std::uint32_t> leaf_refs(NodeId id) const;
    std::size_t leaf_count() const { return leaf_order_.size(); }

    // 1-based position in the source text, or 0 for a delimiter.
    std::uint32_t text_position(std::uint32_t seq_offset) const { return seqs_.origin[seq_offset]; }

    // Node depth (edges) of the deepest node.
    std::size_t height() const;

private:
    friend class IndexAssembler;

    IndexKind kind_ = IndexKind::tree;
    std::uint64_t uid_ = 0;
    SequenceSet seqs_;
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> leaf_order_;
};

// Mutable construction surface shared by the builders and the loader.
class IndexAssembler {
public:
    IndexAssembler(IndexKind kind, SequenceSet seqs);

    SuffixIndex& index() { return idx_; }
    std::vector<Node>& nodes() { return idx_.nodes_; }

    NodeId add_child(NodeId parent, Symbol label, std::uint32_t skip, std::uint32_t lref);
    // Inserts a node `len` symbols down the edge into `id` and returns it.
    NodeId split_edge(NodeId id, std::uint32_t len);
    // Appends a node without touching child lists (loader use).
    NodeId append_raw(const Node& n);
    void link_child_sorted(NodeId parent, NodeId child);

    // Computes leaf ranges and leftmost refs and assigns a fresh uid.
    SuffixIndex finish();

private:
    SuffixIndex idx_;
};

SuffixIndex build_suffix_trie(const Text& text);
SuffixIndex build_suffix_trie(SequenceSet seqs);

// Every segment must end in a delimiter.
SuffixIndex build_suffix_tree(const Text& text);
SuffixIndex build_suffix_tree(SequenceSet seqs);

enum class NavStatus : std::uint8_t { full_match, mismatch, fell_off };

struct NavOutcome {
    NodeId node = SuffixIndex::root();
    std::size_t matched = 0;
    NavStatus status = NavStatus::fell_off;
};

struct PathEntry {
    NodeId node;
    std::uint32_t cum;
    bool operator==(const PathEntry&) const = default;
};

struct NavPath {
    std::vector<PathEntry> nodes;
    NavStatus status = NavStatus::full_match;
};

// Patricia navigation: compares discriminators only and stops at the first
// node whose cumulative skip reaches the query length.
NavOutcome navigate(const SuffixIndex& index, std::span<const Symbol> query);
NavOutcome navigate(const SuffixIndex& index, const Pattern& pat);

// Same walk, recording every node from the root. An empty query yields [root].
NavPath record_path(const SuffixIndex& index, std::span<const Symbol> query);
NavPath record_path(const SuffixIndex& index, const Pattern& pat);

// Sorted 1-based text positions of the suffixes below `node`; suffixes that
// start on a delimiter are dropped.
std::vector<std::uint32_t> occurrences(const SuffixIndex& index, NodeId node);

// Compares query[from, to) with the text under the node's leftmost leaf.
bool verify_range(const SuffixIndex& index, NodeId node, std::span<const Symbol> query,
                  std::size_t from, std::size_t to);
bool verify_against_text(const SuffixIndex& index, NodeId node, std::span<const Symbol> query);
bool verify_against_text(const SuffixIndex& index, NodeId node, const Pattern& pat);

} // namespace parsuffix
