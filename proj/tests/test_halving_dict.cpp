#include <doctest.h>

#include <random>

#include "parsuffix/halving_dict.hpp"
#include "support.hpp"

using namespace parsuffix;
using namespace testsupport;

namespace {

SymbolString concat(SymbolString a, const SymbolString& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string random_text(std::mt19937_64& rng, std::size_t n, int sigma) {
    std::string t(n, 'A');
    for (char& c : t) {
        c = static_cast<char>('A' + static_cast<int>(rng() % static_cast<unsigned>(sigma)));
    }
    return t;
}

} // namespace

TEST_CASE("trie dictionary entries on ABRACADABRA$") {
    const SuffixIndex t = build_suffix_trie(make_text("ABRACADABRA", 1));
    const PairDict d = build_trie_halving_dict(t);
    const NodeId ab = node_spelling(t, "AB");
    const NodeId ra = node_spelling(t, "RA");
    CHECK(d.probe(t, ab, ra) == node_spelling(t, "ABRA"));
    CHECK_FALSE(d.probe(t, ra, ab).has_value());
    CHECK_FALSE(d.probe(t, node_spelling(t, "C"), node_spelling(t, "D")).has_value());
    CHECK(d.probe(t, node_spelling(t, "A"), SuffixIndex::root()) == node_spelling(t, "A"));
    CHECK(d.probe(t, node_spelling(t, "A"), node_spelling(t, "B")) == ab);
    CHECK(d.size() == t.size() - 1);
}

TEST_CASE("probing with a foreign index is rejected") {
    const SuffixIndex t = build_suffix_trie(make_text("AB", 1));
    const SuffixIndex other = build_suffix_trie(make_text("AB", 1));
    const PairDict d = build_trie_halving_dict(t);
    CHECK_THROWS_AS(d.probe(other, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(d.probe(t, 999, 0), std::invalid_argument);
}

TEST_CASE("tree dictionary entries on ABRACADABRA$") {
    const SuffixIndex t = build_suffix_tree(make_text("ABRACADABRA", 1));
    const PairDict d = build_tree_halving_dict(t);
    const NodeId A = node_spelling(t, "A");
    const NodeId bra = node_spelling(t, "BRA");
    CHECK(d.probe(t, A, bra) == node_spelling(t, "ABRA"));
    CHECK(d.probe(t, A, SuffixIndex::root()) == A);
    const NodeId dollar = node_spelling(t, "$");
    CHECK(d.probe(t, dollar, SuffixIndex::root()) == dollar);
    CHECK(d.size() == t.size());
}

TEST_CASE("property: trie dictionary parity, soundness and completeness") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 30; ++iter) {
        const std::string raw = random_text(rng, 1 + rng() % 25, 1 + iter % 4);
        const SuffixIndex t = build_suffix_trie(make_text(raw, 1));
        const PairDict d = build_trie_halving_dict(t);
        CHECK(d.size() == t.size() - 1);
        std::set<NodeId> seen;
        for (const auto& [a1, a2, w] : d.entries()) {
            CHECK((t.cum(a1) == t.cum(a2) || t.cum(a1) == t.cum(a2) + 1));
            CHECK(concat(label_of(t, a1), label_of(t, a2)) == label_of(t, w));
            seen.insert(w);
        }
        CHECK(seen.size() == t.size() - 1);
    }
}

TEST_CASE("property: tree dictionary matches a brute-force construction") {
    std::mt19937_64 rng(4);
    for (int iter = 0; iter < 30; ++iter) {
        const std::string raw = random_text(rng, 1 + rng() % 30, 1 + iter % 4);
        const SuffixIndex t = build_suffix_tree(make_text(raw, 1));
        const PairDict d = build_tree_halving_dict(t);
        CHECK(d.size() == t.size());
        for (NodeId w = 1; w < t.size(); ++w) {
            const SymbolString s = shortest_of(t, w);
            const std::size_t half = (s.size() + 1) / 2;
            const NodeId b1 = brute_locus(t, SymbolString(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(half)));
            const std::uint32_t bhat = t.cum(b1);
            NodeId b2 = SuffixIndex::root();
            if (bhat < s.size()) {
                b2 = brute_locus(t, SymbolString(s.begin() + bhat, s.end()));
                // soundness: the rest fits under b2
                CHECK(s.size() - bhat <= t.cum(b2));
            }
            CHECK(d.probe(t, b1, b2) == w);
        }
    }
}
