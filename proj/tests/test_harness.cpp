#include <doctest.h>

#include <json.hpp>

#include "parsuffix/harness.hpp"

using namespace parsuffix;

TEST_CASE("oracle_scan examples") {
    CHECK(oracle_scan("ABRACADABRA", "ABRA") == std::vector<std::uint32_t>{1, 8});
    CHECK(oracle_scan("AAAA", "AA") == std::vector<std::uint32_t>{1, 2, 3});
    CHECK(oracle_scan("AB", "ABC").empty());
    CHECK(oracle_scan(make_text("ABRACADABRA", 1), Pattern("A")) ==
          std::vector<std::uint32_t>{1, 4, 6, 8, 11});
}

TEST_CASE("generators are deterministic and stay in the alphabet") {
    CHECK(generate_text(5, 100, 4) == generate_text(5, 100, 4));
    CHECK(generate_text(5, 100, 4) != generate_text(6, 100, 4));
    for (char c : generate_text(1, 500, 3)) {
        CHECK((c >= 'A' && c <= 'C'));
    }
    CHECK(generate_text(1, 0, 2).empty());

    const std::string text = generate_text(2, 200, 4);
    CorpusCase c{7, 200, 4, 12, PatternMode::present};
    const std::string present = generate_pattern(c, text);
    CHECK(present.size() == 12);
    CHECK(text.find(present) != std::string::npos);
    CHECK(generate_pattern(c, text) == present);

    c.mode = PatternMode::mutated;
    const std::string mutated = generate_pattern(c, text);
    CHECK(mutated.size() == 12);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < 12; ++i) {
        diff += mutated[i] != present[i] ? 1 : 0;
    }
    CHECK(diff == 1);

    c.m = 0;
    CHECK_THROWS_AS(generate_pattern(c, text), std::invalid_argument);

    // a unary text mutates outside its alphabet
    const CorpusCase u{3, 10, 1, 4, PatternMode::mutated};
    CHECK(oracle_scan(std::string(10, 'A'), generate_pattern(u, std::string(10, 'A'))).empty());
}

TEST_CASE("algorithm names round trip") {
    for (Algo a : {Algo::seq_tree, Algo::trie_par, Algo::tree_par2, Algo::interleaved}) {
        CHECK(parse_algo(to_string(a)) == a);
    }
    CHECK(parse_algo("seq") == Algo::seq_tree);
    CHECK_FALSE(parse_algo("bogus").has_value());
}

TEST_CASE("run_case on ABRACADABRA runs every algorithm") {
    Workbench wb("ABRACADABRA");
    const CaseReport rep = run_case(wb, CorpusCase{1, 11, 5, 4, PatternMode::present}, "ABRA", RunPlan{});
    CHECK(rep.expected == std::vector<std::uint32_t>{1, 8});
    CHECK(rep.ok());
    std::size_t active = 0;
    for (const AlgoRun& r : rep.runs) {
        if (!r.skipped) {
            ++active;
            CHECK(r.positions == rep.expected);
            CHECK(r.laws_ok);
        }
    }
    // seq, trie p=2,4, tree-par2, interleaved j=2,4
    CHECK(active == 6);
}

TEST_CASE("skips are reported with reasons") {
    Workbench wb(std::string(50, 'A'), WorkbenchOptions{10, 4});
    CHECK_FALSE(wb.has_trie());
    const AlgoRun trie = run_algo(wb, Algo::trie_par, 2, "AA", ExecMode::simulated);
    CHECK(trie.skipped);
    CHECK(trie.skip_reason == "text above trie limit");
    CHECK(run_algo(wb, Algo::tree_par2, 2, "A", ExecMode::simulated).skipped);
    CHECK(run_algo(wb, Algo::interleaved, 8, "AAAAAAAA", ExecMode::simulated).skipped);
}

TEST_CASE("check_laws flags violations") {
    AlgoRun r;
    r.algo = Algo::trie_par;
    r.p = 4;
    r.status = QueryStatus::found;
    r.totals.nav_chars = 8;
    r.totals.probes = 3;
    r.work = 11;
    r.span = 4;
    check_laws(r, 8);
    CHECK(r.laws_ok);
    r.span = 5;
    check_laws(r, 8);
    CHECK_FALSE(r.laws_ok);
    CHECK(r.law_note == "trie-par span above ceil(m/p) + lg p");

    AlgoRun t;
    t.algo = Algo::tree_par2;
    t.p = 2;
    t.totals.nav_chars = 100;
    t.work = 100;
    t.span = 10;
    check_laws(t, 10);
    CHECK_FALSE(t.laws_ok);
}

TEST_CASE("selftest passes and reports json") {
    SelftestConfig cfg;
    cfg.n = 64;
    cfg.trials = 30;
    cfg.seed = 3;
    const SelftestSummary s = run_selftest(cfg);
    CHECK(s.ok());
    CHECK(s.cases == 30);
    CHECK(s.runs > s.skipped);
    const auto doc = nlohmann::json::parse(selftest_json(cfg, s));
    CHECK(doc["schema"] == kReportSchema);
    CHECK(doc["summary"]["pass"] == true);
    CHECK(doc["cases"].size() == 30);
    CHECK(doc["config"]["n"] == 64);

    cfg.trials = 0;
    const SelftestSummary none = run_selftest(cfg);
    CHECK(none.cases == 0);
    CHECK(none.ok());
}
