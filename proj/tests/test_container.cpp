#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <random>

#include "parsuffix/container.hpp"
#include "parsuffix/harness.hpp"
#include "parsuffix/trie_parallel.hpp"
#include "parsuffix/tree_parallel.hpp"

using namespace parsuffix;

namespace {

void same_nodes(const SuffixIndex& a, const SuffixIndex& b) {
    REQUIRE(a.size() == b.size());
    CHECK(a.kind() == b.kind());
    for (NodeId v = 0; v < a.size(); ++v) {
        const Node& x = a.node(v);
        const Node& y = b.node(v);
        CHECK(x.parent == y.parent);
        CHECK(x.label == y.label);
        CHECK(x.skip == y.skip);
        CHECK(x.cum == y.cum);
        CHECK(x.lref == y.lref);
        CHECK(x.ref == y.ref);
        CHECK(a.children(v) == b.children(v));
    }
}

void same_dict(const PairDict& a, const PairDict& b) { CHECK(a.entries() == b.entries()); }

std::vector<std::string> patterns_for(const std::string& raw, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> out{"A", "AB", "ABRA", "ZZ"};
    for (int i = 0; i < 20 && !raw.empty(); ++i) {
        CorpusCase c{rng(), raw.size(), 3, 1 + rng() % raw.size(), static_cast<PatternMode>(i % 3)};
        out.push_back(generate_pattern(c, raw));
    }
    return out;
}

} // namespace

TEST_CASE("tree bundle round trip keeps ids and answers") {
    const std::string raw = generate_text(3, 120, 3);
    const IndexBundle b = build_bundle(BundleKind::tree, raw);
    const IndexBundle back = deserialize_bundle(serialize_bundle(b));
    CHECK(back.kind == BundleKind::tree);
    CHECK(back.raw == raw);
    same_nodes(*b.index, *back.index);
    same_dict(*b.dict, *back.dict);
    CHECK(back.anc->links() == b.anc->links());
    for (const std::string& p : patterns_for(raw, 1)) {
        CHECK(seq_query(*back.index, Pattern(p)).positions == oracle_scan(raw, p));
        if (p.size() >= 2) {
            CHECK(par_query_tree2(*back.index, *back.anc, *back.dict, Pattern(p)).positions ==
                  oracle_scan(raw, p));
        }
    }
}

TEST_CASE("trie bundle round trip") {
    const std::string raw = "ABRACADABRA";
    const IndexBundle b = build_bundle(BundleKind::trie, raw);
    const IndexBundle back = deserialize_bundle(serialize_bundle(b));
    same_nodes(*b.index, *back.index);
    same_dict(*b.dict, *back.dict);
    CHECK(par_query_trie(*back.index, *back.dict, Pattern("ABRA"), 4).positions ==
          std::vector<std::uint32_t>{1, 8});
}

TEST_CASE("interleaved bundle round trip through a file") {
    const std::string raw = generate_text(4, 200, 2);
    const IndexBundle b = build_bundle(BundleKind::interleaved, raw, 8);
    const std::string path = std::string(std::getenv("PARSUFFIX_TMP") ? std::getenv("PARSUFFIX_TMP") : ".") +
                             "/roundtrip.pqst";
    save_bundle(b, path);
    const IndexBundle back = load_bundle(path);
    std::remove(path.c_str());
    CHECK(back.p == 8);
    REQUIRE(back.layered->layers.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(back.layered->layers[i].k == b.layered->layers[i].k);
        same_nodes(b.layered->layers[i].tree, back.layered->layers[i].tree);
    }
    for (std::size_t i = 0; i < 3; ++i) {
        same_dict(b.layered->dicts[i], back.layered->dicts[i]);
    }
    for (const std::string& p : patterns_for(raw, 2)) {
        for (std::size_t j = 2; j <= 8 && j < 2 * p.size(); j *= 2) {
            CHECK(par_query_interleaved(*back.layered, Pattern(p), j).positions ==
                  oracle_scan(raw, p));
        }
    }
}

TEST_CASE("empty text bundles load") {
    for (BundleKind k : {BundleKind::trie, BundleKind::tree, BundleKind::interleaved}) {
        const IndexBundle back = deserialize_bundle(serialize_bundle(build_bundle(k, "", 2)));
        CHECK(back.raw.empty());
    }
}

TEST_CASE("corruption and truncation raise FormatError") {
    const std::string bytes = serialize_bundle(build_bundle(BundleKind::tree, "ABRACADABRA"));
    CHECK_THROWS_AS(deserialize_bundle(""), FormatError);
    CHECK_THROWS_AS(deserialize_bundle("PQSX"), FormatError);
    for (std::size_t cut = 0; cut < bytes.size(); cut += 7) {
        CHECK_THROWS_AS(deserialize_bundle(std::string_view(bytes).substr(0, cut)), FormatError);
    }
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        std::string bad = bytes;
        const std::size_t at = rng() % bad.size();
        bad[at] = static_cast<char>(bad[at] ^ (1 + rng() % 255));
        CHECK_THROWS_AS(deserialize_bundle(bad), FormatError);
    }
    std::string version = bytes;
    version[4] = 2;
    CHECK_THROWS_AS(deserialize_bundle(version), FormatError);
    CHECK_THROWS_AS(load_bundle("/nonexistent/dir/x.pqst"), std::runtime_error);
}
