// Reference suffix tree construction by naive suffix insertion with edge
// splitting. Quadratic in the worst case; kept separate so a linear-time
// builder can replace it behind build_suffix_tree().

#include <stdexcept>

#include "parsuffix/suffix_index.hpp"

namespace parsuffix {

SuffixIndex build_suffix_tree(const Text& text) {
    return build_suffix_tree(single_sequence(text));
}

SuffixIndex build_suffix_tree(SequenceSet seqs) {
    if (seqs.seq.empty()) {
        throw std::invalid_argument("build_suffix_tree: empty text");
    }
    for (std::size_t i = 0; i < seqs.segment_starts.size(); ++i) {
        const std::uint32_t end = i + 1 < seqs.segment_starts.size()
                                      ? seqs.segment_starts[i + 1]
                                      : static_cast<std::uint32_t>(seqs.seq.size());
        if (end == seqs.segment_starts[i] || !seqs.seq[end - 1].is_delimiter()) {
            throw std::invalid_argument("build_suffix_tree: every segment must end in a delimiter");
        }
    }

    IndexAssembler as(IndexKind::tree, std::move(seqs));
    const SequenceSet& s = as.index().sequences();
    const auto total = static_cast<std::uint32_t>(s.seq.size());

    for (std::uint32_t i = 0; i < total; ++i) {
        const std::uint32_t end = s.segment_end(i);
        NodeId cur = SuffixIndex::root();
        std::uint32_t pos = i;
        for (;;) {
            if (pos == end) {
                throw std::logic_error("build_suffix_tree: suffix is a prefix of another suffix");
            }
            const NodeId c = as.index().child(cur, s.seq[pos]);
            if (c == kNoNode) {
                const NodeId leaf = as.add_child(cur, s.seq[pos], end - pos, i);
                as.nodes()[leaf].ref = i;
                break;
            }
            const Node& cn = as.index().node(c);
            const std::uint32_t edge = cn.lref + as.index().cum(cur);
            const std::uint32_t len = cn.skip;
            std::uint32_t j = 1;
            while (j < len && pos + j < end && s.seq[edge + j] == s.seq[pos + j]) {
                ++j;
            }
            if (j == len) {
                cur = c;
                pos += len;
                continue;
            }
            if (pos + j == end) {
                throw std::logic_error("build_suffix_tree: suffix ends inside an edge");
            }
            const NodeId mid = as.split_edge(c, j);
            const NodeId leaf = as.add_child(mid, s.seq[pos + j], end - (pos + j), i);
            as.nodes()[leaf].ref = i;
            break;
        }
    }
    return as.finish();
}

} // namespace parsuffix
