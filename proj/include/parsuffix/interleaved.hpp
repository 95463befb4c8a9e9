#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "parsuffix/halving_dict.hpp"
#include "parsuffix/step_ledger.hpp"

namespace parsuffix {

// Generalized suffix tree over the k interleaved subsequences of the text
// extended by k delimiters.
struct LayerIndex {
    std::size_t k = 1;
    SuffixIndex tree;
};

struct LayeredIndex {
    std::string raw;
    std::vector<LayerIndex> layers;  // strides 1, 2, 4, ..., p
    std::vector<PairDict> dicts;     // dicts[i]: layer i+1 pairs -> layer i nodes

    std::size_t p() const { return layers.empty() ? 0 : layers.back().k; }
    // Position of stride k in `layers`; throws if absent.
    std::size_t layer_of(std::size_t k) const;
};

LayerIndex build_layer(std::string_view raw, std::size_t k);

// (node of the odd symbols, node of the even symbols) -> lower node, keyed by
// the lower node's shortest string.
PairDict build_layer_dict(const LayerIndex& upper, const LayerIndex& lower);

LayeredIndex build_layered_index(std::string_view raw, std::size_t p);

// Staircase merge of two paths in the upper layer. `target_len` is the
// length of the deinterleaved query piece; hits whose shortest string is
// longer are dropped. Returns the lower-layer path without the root.
struct MergeOutcome {
    NavPath path;
    std::uint64_t probes = 0;
};
MergeOutcome deinterleave_paths(const SuffixIndex& upper, const SuffixIndex& lower,
                                const PairDict& dict, const NavPath& path1,
                                const NavPath& path2, std::size_t target_len,
                                const std::function<void(std::uint64_t)>& on_probe = {});

// The i-th (0-based) stride-j subsequence of pat.
SymbolString query_piece(std::span<const Symbol> q, std::size_t i, std::size_t j);

// j lanes navigate layer j, then paths are merged layer by layer down to the
// plain suffix tree. j must be a power of two with 2 <= j <= p and j < 2m.
QueryResult par_query_interleaved(const LayeredIndex& index, const Pattern& pat, std::size_t j,
                                  ExecMode mode = ExecMode::simulated);

} // namespace parsuffix
