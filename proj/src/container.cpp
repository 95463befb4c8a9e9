#include "parsuffix/container.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "parsuffix/trie_parallel.hpp"

namespace parsuffix {

const char* to_string(BundleKind k) {
    switch (k) {
    case BundleKind::trie:
        return "trie";
    case BundleKind::tree:
        return "tree";
    case BundleKind::interleaved:
        return "interleaved";
    }
    return "unknown";
}

IndexBundle build_bundle(BundleKind kind, std::string_view raw, std::size_t p) {
    IndexBundle b;
    b.kind = kind;
    b.raw = std::string(raw);
    switch (kind) {
    case BundleKind::trie:
        b.index = build_suffix_trie(make_text(raw, 1));
        b.dict = build_trie_halving_dict(*b.index);
        break;
    case BundleKind::tree:
        b.index = build_suffix_tree(make_text(raw, 1));
        b.anc = build_ancestry(*b.index);
        b.dict = build_tree_halving_dict(*b.index);
        break;
    case BundleKind::interleaved:
        b.p = p;
        b.layered = build_layered_index(raw, p);
        break;
    }
    return b;
}

namespace {

constexpr char kMagic[4] = {'P', 'Q', 'S', 'T'};

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Writer {
public:
    void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            u8(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            u8(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    void bytes(std::string_view s) { out_.append(s); }
    std::string& str() { return out_; }

private:
    std::string out_;
};

class Reader {
public:
    explicit Reader(std::string_view in) : in_(in) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(in_[pos_++]);
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(u8()) << (8 * i);
        }
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<std::uint64_t>(u8()) << (8 * i);
        }
        return v;
    }
    std::string_view bytes(std::size_t n) {
        need(n);
        auto s = in_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    bool done() const { return pos_ == in_.size(); }

private:
    void need(std::size_t n) const {
        if (in_.size() - pos_ < n) {
            throw FormatError("index container is truncated");
        }
    }

    std::string_view in_;
    std::size_t pos_ = 0;
};

void write_index(Writer& w, const SuffixIndex& idx) {
    w.u8(static_cast<std::uint8_t>(idx.kind()));
    w.u32(static_cast<std::uint32_t>(idx.size()));
    for (NodeId v = 0; v < idx.size(); ++v) {
        const Node& n = idx.node(v);
        w.u32(n.parent);
        w.u32(n.label.code());
        w.u32(n.skip);
        w.u32(n.lref);
        w.u32(n.ref);
        const auto kids = idx.children(v);
        w.u32(static_cast<std::uint32_t>(kids.size()));
        for (NodeId c : kids) {
            w.u32(idx.node(c).label.code());
            w.u32(c);
        }
    }
}

SuffixIndex read_index(Reader& r, SequenceSet seqs) {
    const std::uint8_t kind = r.u8();
    if (kind > static_cast<std::uint8_t>(IndexKind::tree)) {
        throw FormatError("unknown index kind");
    }
    const std::uint32_t count = r.u32();
    if (count == 0) {
        throw FormatError("index without a root");
    }
    const auto total = static_cast<std::uint32_t>(seqs.seq.size());
    IndexAssembler as(static_cast<IndexKind>(kind), std::move(seqs));
    std::vector<std::vector<std::pair<std::uint32_t, NodeId>>> kids(count);
    for (NodeId v = 0; v < count; ++v) {
        Node n;
        n.parent = r.u32();
        n.label = Symbol::from_code(r.u32());
        n.skip = r.u32();
        n.lref = r.u32();
        n.ref = r.u32();
        const std::uint32_t nk = r.u32();
        if (nk > count) {
            throw FormatError("child list longer than the node table");
        }
        for (std::uint32_t i = 0; i < nk; ++i) {
            const std::uint32_t sym = r.u32();
            const NodeId c = r.u32();
            if (c >= count || c == 0) {
                throw FormatError("child id out of range");
            }
            kids[v].emplace_back(sym, c);
        }
        if (v == 0) {
            if (n.parent != kNoNode || n.skip != 0) {
                throw FormatError("malformed root record");
            }
        } else if (n.parent >= count || n.skip == 0 || n.lref >= total ||
                   (n.ref != kNoRef && n.ref >= total)) {
            throw FormatError("malformed node record " + std::to_string(v));
        }
        if (v == 0) {
            as.nodes()[0] = n;
        } else {
            as.append_raw(n);
        }
    }

    auto& nodes = as.nodes();
    // cum in id order is not safe after splits; resolve through parents
    std::vector<std::uint8_t> state(count, 0);
    for (NodeId v = 0; v < count; ++v) {
        std::vector<NodeId> chain;
        NodeId u = v;
        while (u != kNoNode && state[u] != 2) {
            if (state[u] == 1) {
                throw FormatError("parent cycle in node table");
            }
            state[u] = 1;
            chain.push_back(u);
            u = nodes[u].parent;
        }
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            Node& n = nodes[*it];
            n.cum = n.parent == kNoNode ? 0 : nodes[n.parent].cum + n.skip;
            state[*it] = 2;
        }
    }

    std::vector<bool> listed(count, false);
    for (NodeId v = 0; v < count; ++v) {
        NodeId prev = kNoNode;
        for (const auto& [sym, c] : kids[v]) {
            if (listed[c]) {
                throw FormatError("node " + std::to_string(c) + " listed twice");
            }
            listed[c] = true;
            if (nodes[c].parent != v || nodes[c].label.code() != sym) {
                throw FormatError("child list disagrees with node " + std::to_string(c));
            }
            if (prev != kNoNode && !(nodes[prev].label < nodes[c].label)) {
                throw FormatError("children out of order under node " + std::to_string(v));
            }
            if (prev == kNoNode) {
                nodes[v].first_child = c;
            } else {
                nodes[prev].next_sibling = c;
            }
            prev = c;
        }
    }

    for (NodeId v = 1; v < count; ++v) {
        if (!listed[v]) {
            throw FormatError("node " + std::to_string(v) + " is unreachable");
        }
    }

    std::vector<std::uint32_t> stored_lref(count);
    for (NodeId v = 0; v < count; ++v) {
        stored_lref[v] = nodes[v].lref;
        if (nodes[v].lref + static_cast<std::uint64_t>(nodes[v].cum) > total) {
            throw FormatError("node label runs past the text at " + std::to_string(v));
        }
    }
    SuffixIndex idx = as.finish();
    for (NodeId v = 0; v < count; ++v) {
        const Node& n = idx.node(v);
        if (n.lref != stored_lref[v]) {
            throw FormatError("leftmost reference mismatch at node " + std::to_string(v));
        }
        if (v != 0 && idx.seq()[n.lref + n.cum - n.skip] != n.label) {
            throw FormatError("discriminator does not match the text at " + std::to_string(v));
        }
    }
    return idx;
}

void write_dict(Writer& w, const PairDict& d) {
    const auto entries = d.entries();
    w.u64(entries.size());
    for (const auto& [a, b, v] : entries) {
        w.u32(a);
        w.u32(b);
        w.u32(v);
    }
}

PairDict read_dict(Reader& r, const SuffixIndex& keys, const SuffixIndex& values) {
    PairDict d(keys.uid(), values.uid());
    const std::uint64_t count = r.u64();
    for (std::uint64_t i = 0; i < count; ++i) {
        const NodeId a = r.u32();
        const NodeId b = r.u32();
        const NodeId v = r.u32();
        if (!keys.contains(a) || !keys.contains(b) || !values.contains(v)) {
            throw FormatError("dictionary entry refers to a missing node");
        }
        if (!d.insert(a, b, v)) {
            throw FormatError("duplicate dictionary key");
        }
    }
    return d;
}

} // namespace

std::string serialize_bundle(const IndexBundle& b) {
    Writer w;
    w.bytes(std::string_view(kMagic, 4));
    w.u8(kContainerVersion);
    w.u8(static_cast<std::uint8_t>(b.kind));
    w.u64(b.raw.size());
    w.bytes(b.raw);
    w.u32(static_cast<std::uint32_t>(b.p));
    switch (b.kind) {
    case BundleKind::trie:
        write_index(w, *b.index);
        write_dict(w, *b.dict);
        break;
    case BundleKind::tree:
        write_index(w, *b.index);
        for (NodeId l : b.anc->links()) {
            w.u32(l);
        }
        write_dict(w, *b.dict);
        break;
    case BundleKind::interleaved:
        w.u32(static_cast<std::uint32_t>(b.layered->layers.size()));
        for (const LayerIndex& layer : b.layered->layers) {
            w.u32(static_cast<std::uint32_t>(layer.k));
            write_index(w, layer.tree);
        }
        for (const PairDict& d : b.layered->dicts) {
            write_dict(w, d);
        }
        break;
    }
    w.u64(fnv1a(w.str()));
    return std::move(w.str());
}

IndexBundle deserialize_bundle(std::string_view bytes) {
    if (bytes.size() < 4 + 2 + 8 || bytes.substr(0, 4) != std::string_view(kMagic, 4)) {
        throw FormatError("not an index container (bad magic)");
    }
    const std::string_view body = bytes.substr(0, bytes.size() - 8);
    Reader tail(bytes.substr(bytes.size() - 8));
    if (tail.u64() != fnv1a(body)) {
        throw FormatError("index container checksum mismatch");
    }
    Reader r(body.substr(4));
    if (r.u8() != kContainerVersion) {
        throw FormatError("unsupported container version");
    }
    const std::uint8_t kind = r.u8();
    if (kind > static_cast<std::uint8_t>(BundleKind::interleaved)) {
        throw FormatError("unknown bundle kind");
    }
    IndexBundle b;
    b.kind = static_cast<BundleKind>(kind);
    const std::uint64_t raw_len = r.u64();
    b.raw = std::string(r.bytes(raw_len));
    b.p = r.u32();

    switch (b.kind) {
    case BundleKind::trie:
        b.index = read_index(r, single_sequence(make_text(b.raw, 1)));
        if (b.index->kind() != IndexKind::trie) {
            throw FormatError("trie bundle holds a tree");
        }
        b.dict = read_dict(r, *b.index, *b.index);
        break;
    case BundleKind::tree: {
        b.index = read_index(r, single_sequence(make_text(b.raw, 1)));
        if (b.index->kind() != IndexKind::tree) {
            throw FormatError("tree bundle holds a trie");
        }
        std::vector<NodeId> links(b.index->size());
        for (NodeId& l : links) {
            l = r.u32();
        }
        try {
            b.anc = AncestryIndex(*b.index, std::move(links));
        } catch (const std::invalid_argument& e) {
            throw FormatError(e.what());
        }
        b.dict = read_dict(r, *b.index, *b.index);
        break;
    }
    case BundleKind::interleaved: {
        LayeredIndex li;
        li.raw = b.raw;
        const std::uint32_t layers = r.u32();
        if (layers < 2 || layers > 32) {
            throw FormatError("implausible layer count");
        }
        for (std::uint32_t i = 0; i < layers; ++i) {
            const std::uint32_t k = r.u32();
            if (k != (1U << i)) {
                throw FormatError("layer strides must be 1, 2, 4, ...");
            }
            li.layers.push_back({k, read_index(r, interleaved_sequences(make_text(b.raw, k), k))});
        }
        for (std::uint32_t i = 1; i < layers; ++i) {
            li.dicts.push_back(read_dict(r, li.layers[i].tree, li.layers[i - 1].tree));
        }
        if (b.p != li.p()) {
            throw FormatError("stride header disagrees with the layers");
        }
        b.layered = std::move(li);
        break;
    }
    }
    if (!r.done()) {
        throw FormatError("trailing bytes in index container");
    }
    return b;
}

void save_bundle(const IndexBundle& b, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    const std::string bytes = serialize_bundle(b);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("write to " + path + " failed");
    }
}

IndexBundle load_bundle(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_bundle(bytes);
}

} // namespace parsuffix
