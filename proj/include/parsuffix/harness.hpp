#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "parsuffix/ancestry.hpp"
#include "parsuffix/halving_dict.hpp"
#include "parsuffix/interleaved.hpp"
#include "parsuffix/step_ledger.hpp"

namespace parsuffix {

// Every 1-based i with raw[i .. i+m-1] == pat, overlaps included.
std::vector<std::uint32_t> oracle_scan(std::string_view raw, std::string_view pat);
std::vector<std::uint32_t> oracle_scan(const Text& text, const Pattern& pat);

enum class PatternMode : std::uint8_t { present, random, mutated };
const char* to_string(PatternMode mode);

struct CorpusCase {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t sigma = 2;
    std::size_t m = 1;
    PatternMode mode = PatternMode::present;
};

// Uniform text over the first sigma capital letters (sigma <= 26).
std::string generate_text(std::uint64_t seed, std::size_t n, std::size_t sigma);
// Present mode copies a random substring; mutated mode also flips one symbol.
std::string generate_pattern(const CorpusCase& c, std::string_view text);

enum class Algo : std::uint8_t { seq_tree, trie_par, tree_par2, interleaved };
const char* to_string(Algo a);
std::optional<Algo> parse_algo(std::string_view name);

struct WorkbenchOptions {
    std::size_t trie_limit = 2000;  // skip the quadratic trie above this n
    std::size_t layers_p = 8;
};

// Lazily built indexes over one text.
class Workbench {
public:
    explicit Workbench(std::string raw, WorkbenchOptions opt = {});

    std::string_view raw() const { return raw_; }
    const SuffixIndex& tree();
    const AncestryIndex& ancestry();
    const PairDict& tree_dict();
    bool has_trie() const { return raw_.size() <= opt_.trie_limit; }
    const SuffixIndex& trie();
    const PairDict& trie_dict();
    const LayeredIndex& layered();

private:
    std::string raw_;
    WorkbenchOptions opt_;
    std::optional<SuffixIndex> tree_;
    std::optional<AncestryIndex> anc_;
    std::optional<PairDict> tree_dict_;
    std::optional<SuffixIndex> trie_;
    std::optional<PairDict> trie_dict_;
    std::optional<LayeredIndex> layered_;
};

struct AlgoRun {
    Algo algo = Algo::seq_tree;
    std::size_t p = 1;
    bool skipped = false;
    std::string skip_reason;
    QueryStatus status = QueryStatus::not_found;
    std::vector<std::uint32_t> positions;
    bool match = false;       // positions equal the oracle
    bool laws_ok = true;      // ledger laws for this algorithm
    std::string law_note;     // first violated law
    std::uint64_t work = 0;
    std::uint64_t span = 0;
    std::uint64_t total_span = 0;
    LaneCounters totals;
    std::uint64_t lane_nav_max = 0;
    std::vector<LayerStat> layers;
};

struct CaseReport {
    CorpusCase c;
    std::string pattern;
    std::vector<std::uint32_t> expected;
    std::vector<AlgoRun> runs;

    bool ok() const;
};

struct RunPlan {
    std::vector<Algo> algos{Algo::seq_tree, Algo::trie_par, Algo::tree_par2, Algo::interleaved};
    std::vector<std::size_t> trie_ps{2, 4, 8, 16};
    std::vector<std::size_t> interleaved_js{2, 4, 8};
    ExecMode mode = ExecMode::simulated;
};

// Checks one algorithm's ledger against its work/span laws.
void check_laws(AlgoRun& run, std::size_t m);

AlgoRun run_algo(Workbench& wb, Algo algo, std::size_t p, const std::string& pattern,
                 ExecMode mode);
CaseReport run_case(Workbench& wb, const CorpusCase& c, const std::string& pattern,
                    const RunPlan& plan);

struct SelftestConfig {
    std::size_t n = 256;
    std::size_t sigma = 4;
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::size_t texts = 4;  // trials are spread over this many texts
    RunPlan plan;
};

struct SelftestSummary {
    std::size_t cases = 0;
    std::size_t runs = 0;
    std::size_t skipped = 0;
    std::size_t mismatches = 0;
    std::size_t law_violations = 0;
    std::optional<std::uint64_t> first_failing_seed;
    std::string first_failure;
    std::vector<CaseReport> reports;

    bool ok() const { return mismatches == 0 && law_violations == 0; }
};

SelftestSummary run_selftest(const SelftestConfig& cfg);

// Machine-readable report; see README for the schema.
std::string selftest_json(const SelftestConfig& cfg, const SelftestSummary& s);

inline constexpr const char* kReportSchema = "parsuffix.selftest/1";

} // namespace parsuffix
