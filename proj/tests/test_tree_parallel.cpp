#include <doctest.h>

#include <random>
#include <set>

#include "parsuffix/harness.hpp"
#include "parsuffix/tree_parallel.hpp"
#include "support.hpp"

using namespace parsuffix;
using namespace testsupport;

namespace {

struct Fixture {
    explicit Fixture(const std::string& raw)
        : tree(build_suffix_tree(make_text(raw, 1))), anc(build_ancestry(tree)),
          dict(build_tree_halving_dict(tree)) {}
    QueryResult run(const std::string& p, ExecMode mode = ExecMode::simulated,
                    TwoLaneTrace* trace = nullptr) const {
        return par_query_tree2(tree, anc, dict, Pattern(p), mode, trace);
    }
    SuffixIndex tree;
    AncestryIndex anc;
    PairDict dict;
};

} // namespace

TEST_CASE("probe_window examples") {
    // m = 10, h = 5: x with cum 6 under a parent of cum 2
    const ProbeWindow w = probe_window(2, 6, 10);
    CHECK(w.lo == 1);
    CHECK(w.hi == 4);
    CHECK(probe_window(0, 1, 10).empty());
    CHECK(probe_window(3, 10, 10).empty());
    // shortest string 2*cp+1 dominates
    CHECK(probe_window(4, 7, 12).lo == 2);
}

TEST_CASE("two-lane goldens on ABRACADABRA") {
    const Fixture f("ABRACADABRA");
    const QueryResult abra = f.run("ABRA");
    CHECK(abra.status == QueryStatus::found);
    CHECK(abra.positions == std::vector<std::uint32_t>{1, 8});
    CHECK(f.run("CAD").positions == std::vector<std::uint32_t>{5});
    CHECK(f.run("BR").positions == std::vector<std::uint32_t>{2, 9});
    CHECK(f.run("ABRAC").positions == std::vector<std::uint32_t>{1});
    const QueryResult abrd = f.run("ABRD");
    CHECK(abrd.positions.empty());
    CHECK(abrd.status == QueryStatus::verify_failed);
    CHECK(f.run("XY").status == QueryStatus::nav_failed);
    CHECK_THROWS_AS(f.run("A"), std::invalid_argument);
}

TEST_CASE("mismatched ancestry or dictionary is rejected") {
    const Fixture f("ABAB");
    const Fixture g("ABAB");
    CHECK_THROWS_AS(par_query_tree2(f.tree, g.anc, f.dict, Pattern("AB")), std::invalid_argument);
    CHECK_THROWS_AS(par_query_tree2(f.tree, f.anc, g.dict, Pattern("AB")), std::invalid_argument);
}

TEST_CASE("property: lane 2 stays aligned and never repeats a probe") {
    std::mt19937_64 rng(31);
    std::size_t hits = 0;
    for (int iter = 0; iter < 60; ++iter) {
        const std::size_t n = 2 + rng() % 80;
        const std::size_t sigma = 1 + rng() % 4;
        const std::string raw = generate_text(rng(), n, sigma);
        const Fixture f(raw);
        for (int q = 0; q < 20; ++q) {
            const std::size_t m = 2 + rng() % (n - 1);
            const std::string pat = raw.substr(rng() % (n - m + 1), m);
            const SymbolString qs = syms(pat);
            TwoLaneTrace trace;
            const QueryResult r = f.run(pat, ExecMode::simulated, &trace);
            CHECK(r.positions == oracle_scan(raw, pat));
            for (const LaneTwoState& s : trace.states) {
                const SymbolString lab = label_of(f.tree, s.node);
                const std::size_t len = std::min<std::size_t>(lab.size(), m - s.offset);
                CHECK(std::equal(lab.begin(), lab.begin() + static_cast<std::ptrdiff_t>(len),
                                 qs.begin() + s.offset));
            }
            std::set<std::pair<NodeId, NodeId>> seen;
            for (const auto& p : trace.probes) {
                CHECK(seen.insert({p.b1, p.b2}).second);
                hits += p.hit.has_value() ? 1 : 0;
            }
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("property: two lanes agree with the scan, keep their laws and match threaded runs") {
    std::mt19937_64 rng(32);
    for (int iter = 0; iter < 60; ++iter) {
        const std::size_t n = 2 + rng() % 120;
        const std::size_t sigma = std::vector<std::size_t>{1, 2, 4, 26}[iter % 4];
        const std::string raw = generate_text(rng(), n, sigma);
        const Fixture f(raw);
        for (int q = 0; q < 20; ++q) {
            CorpusCase c;
            c.seed = rng();
            c.n = n;
            c.sigma = sigma;
            c.m = 2 + rng() % (n - 1);
            c.mode = static_cast<PatternMode>(q % 3);
            const std::string pat = generate_pattern(c, raw);
            if (pat.size() < 2) {
                continue;
            }
            const std::size_t m = pat.size();
            const QueryResult r = f.run(pat);
            CHECK(r.positions == oracle_scan(raw, pat));
            CHECK(r.ledger.totals().nav_chars <= (m + 1) / 2 + (3 * m + 3) / 4 + 2);
            CHECK(r.ledger.span() <= m + 4);
            CHECK(r.ledger.span() <= r.ledger.work());
            const QueryResult th = f.run(pat, ExecMode::threaded);
            CHECK(th.positions == r.positions);
            CHECK(th.status == r.status);
        }
    }
}
