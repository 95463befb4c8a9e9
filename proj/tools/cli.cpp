#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "parsuffix/container.hpp"
#include "parsuffix/harness.hpp"
#include "parsuffix/trie_parallel.hpp"
#include "parsuffix/tree_parallel.hpp"

namespace parsuffix::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::vector<std::string> read_patterns(const std::string& path) {
    std::vector<std::string> out;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!line.empty()) {
            out.push_back(line);
        }
    }
    return out;
}

std::size_t largest_pow2_below(std::size_t bound) {
    std::size_t p = 1;
    while (p * 2 < bound) {
        p *= 2;
    }
    return p;
}

// --- build -----------------------------------------------------------------

struct BuildArgs {
    std::string text;
    std::string kind = "tree";
    std::size_t p = 2;
    std::string out;
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
    BundleKind kind;
    if (a.kind == "trie") {
        kind = BundleKind::trie;
    } else if (a.kind == "tree") {
        kind = BundleKind::tree;
    } else if (a.kind == "interleaved") {
        kind = BundleKind::interleaved;
        if (a.p < 2 || !is_power_of_two(a.p)) {
            throw UsageError("--p must be a power of two >= 2 for interleaved indexes");
        }
    } else {
        throw UsageError("--index must be trie, tree or interleaved");
    }
    const std::string raw = read_file(a.text);
    const IndexBundle b = build_bundle(kind, raw, a.p);
    save_bundle(b, a.out);
    out << "built " << to_string(kind) << " index over " << raw.size() << " bytes\n";
    if (b.layered) {
        for (std::size_t i = 0; i < b.layered->layers.size(); ++i) {
            out << "layer k=" << b.layered->layers[i].k
                << " nodes=" << b.layered->layers[i].tree.size();
            if (i > 0) {
                out << " dict_entries=" << b.layered->dicts[i - 1].size();
            }
            out << "\n";
        }
    } else {
        out << "nodes=" << b.index->size() << " dict_entries=" << b.dict->size() << "\n";
    }
    return 0;
}

// --- query -----------------------------------------------------------------

struct QueryArgs {
    std::string index;
    std::vector<std::string> patterns;
    std::string pattern_file;
    std::string algo = "seq";
    std::size_t p = 0;
    bool count = false;
    bool locate = false;
    bool stats = false;
    bool threads = false;
};

void print_result(const QueryArgs& a, const QueryResult& r, std::ostream& out) {
    if (a.locate) {
        for (std::size_t i = 0; i < r.positions.size(); ++i) {
            out << (i ? " " : "") << r.positions[i];
        }
    } else {
        out << r.positions.size();
    }
    if (a.stats) {
        const LaneCounters t = r.ledger.totals();
        out << "\twork=" << r.ledger.work() << " span=" << r.ledger.span()
            << " nav_chars=" << t.nav_chars << " probes=" << t.probes
            << " shortens=" << t.shortens << " compares=" << t.compares;
        for (const LayerStat& l : r.layers) {
            out << " layer" << l.k << "_probes=" << l.probes;
        }
    }
    out << "\n";
}

const SuffixIndex& seq_index(const IndexBundle& b) {
    return b.layered ? b.layered->layers[0].tree : *b.index;
}

int cmd_query(QueryArgs a, std::ostream& out, std::ostream& err) {
    if (a.count && a.locate) {
        throw UsageError("--count and --locate are exclusive");
    }
    const auto algo = parse_algo(a.algo);
    if (!algo) {
        throw UsageError("--algo must be seq, trie-par, tree-par2 or interleaved");
    }
    if (a.p != 0 && !is_power_of_two(a.p)) {
        throw UsageError("--p must be a power of two");
    }
    if (!a.pattern_file.empty()) {
        for (auto& p : read_patterns(a.pattern_file)) {
            a.patterns.push_back(std::move(p));
        }
    }
    if (a.patterns.empty()) {
        throw UsageError("no patterns given (--pattern or --pattern-file)");
    }
    for (const auto& p : a.patterns) {
        if (p.empty()) {
            throw UsageError("patterns must be non-empty");
        }
    }

    const IndexBundle b = load_bundle(a.index);
    const bool want_trie = *algo == Algo::trie_par;
    const bool want_tree = *algo == Algo::tree_par2;
    const bool want_layers = *algo == Algo::interleaved;
    if ((want_trie && b.kind != BundleKind::trie) || (want_tree && b.kind != BundleKind::tree) ||
        (want_layers && b.kind != BundleKind::interleaved)) {
        throw UsageError(std::string("algorithm ") + to_string(*algo) + " cannot run on a " +
                         to_string(b.kind) + " index");
    }
    const ExecMode mode = a.threads ? ExecMode::threaded : ExecMode::simulated;

    for (const std::string& text : a.patterns) {
        const Pattern pat(text);
        const std::size_t m = pat.size();
        std::size_t p = a.p;
        if (p == 0) {
            p = want_layers ? b.p : 2;
        }
        if ((want_trie || want_layers) && p >= 2 * m) {
            const std::size_t clamped = largest_pow2_below(2 * m);
            err << "warning: p=" << p << " is not below 2m=" << 2 * m << "; using p=" << clamped
                << "\n";
            p = clamped;
        }
        if (want_layers && p > b.p) {
            throw UsageError("--p exceeds the index's top layer p=" + std::to_string(b.p));
        }
        QueryResult r;
        if (*algo == Algo::seq_tree) {
            r = seq_query(seq_index(b), pat);
        } else if (want_trie) {
            r = par_query_trie(*b.index, *b.dict, pat, p, mode);
        } else if (want_tree) {
            if (m < 2) {
                err << "warning: tree-par2 needs m >= 2; answering sequentially\n";
                r = seq_query(*b.index, pat);
            } else {
                r = par_query_tree2(*b.index, *b.anc, *b.dict, pat, mode);
            }
        } else if (p < 2) {
            err << "warning: interleaved needs j >= 2; answering sequentially\n";
            r = seq_query(seq_index(b), pat);
        } else {
            r = par_query_interleaved(*b.layered, pat, p, mode);
        }
        print_result(a, r, out);
    }
    return 0;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string text;
    std::vector<std::size_t> lengths{4, 16, 64, 256};
    std::size_t trials = 20;
    std::uint64_t seed = 1;
    bool threads = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    Workbench wb(read_file(a.text));
    if (wb.raw().empty()) {
        throw UsageError("bench needs a non-empty text");
    }
    RunPlan plan;
    plan.mode = a.threads ? ExecMode::threaded : ExecMode::simulated;
    if (!wb.has_trie()) {
        plan.algos = {Algo::seq_tree, Algo::tree_par2, Algo::interleaved};
    }
    std::mt19937_64 rng(a.seed);

    struct Acc {
        std::size_t runs = 0;
        double work = 0, span = 0, probes = 0;
        bool all_match = true;
    };
    out << std::left << std::setw(6) << "m" << std::setw(13) << "algo" << std::setw(5) << "p"
        << std::setw(11) << "work" << std::setw(11) << "span" << std::setw(11) << "probes"
        << "match\n";
    for (std::size_t m : a.lengths) {
        if (m == 0 || m > wb.raw().size()) {
            continue;
        }
        std::map<std::pair<int, std::size_t>, Acc> acc;
        for (std::size_t t = 0; t < a.trials; ++t) {
            CorpusCase c;
            c.seed = rng();
            c.n = wb.raw().size();
            c.m = m;
            c.mode = PatternMode::present;
            const CaseReport rep = run_case(wb, c, generate_pattern(c, wb.raw()), plan);
            for (const AlgoRun& r : rep.runs) {
                if (r.skipped) {
                    continue;
                }
                Acc& x = acc[{static_cast<int>(r.algo), r.p}];
                ++x.runs;
                x.work += static_cast<double>(r.work);
                x.span += static_cast<double>(r.span);
                x.probes += static_cast<double>(r.totals.probes);
                x.all_match = x.all_match && r.match;
            }
        }
        for (const auto& [key, x] : acc) {
            const double n = static_cast<double>(x.runs);
            out << std::setw(6) << m << std::setw(13) << to_string(static_cast<Algo>(key.first))
                << std::setw(5) << key.second << std::fixed << std::setprecision(1)
                << std::setw(11) << x.work / n << std::setw(11) << x.span / n << std::setw(11)
                << x.probes / n << (x.all_match ? "yes" : "NO") << "\n";
        }
    }
    return 0;
}

// --- selftest --------------------------------------------------------------

struct SelftestArgs {
    SelftestConfig cfg;
    bool threads = false;
    std::string report;
};

int cmd_selftest(SelftestArgs a, std::ostream& out) {
    if (const char* env = std::getenv("PARSUFFIX_SEED")) {
        try {
            a.cfg.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError("PARSUFFIX_SEED must be an unsigned integer");
        }
    }
    if (a.cfg.sigma == 0 || a.cfg.sigma > 26) {
        throw UsageError("--sigma must be in 1..26");
    }
    if (a.cfg.n == 0 && a.cfg.trials > 0) {
        throw UsageError("--n must be at least 1");
    }
    a.cfg.plan.mode = a.threads ? ExecMode::threaded : ExecMode::simulated;
    const SelftestSummary s = run_selftest(a.cfg);

    struct Row {
        std::size_t runs = 0, skipped = 0, mismatches = 0, violations = 0;
        std::uint64_t max_span = 0;
    };
    std::map<std::pair<int, std::size_t>, Row> rows;
    for (const CaseReport& rep : s.reports) {
        for (const AlgoRun& r : rep.runs) {
            Row& row = rows[{static_cast<int>(r.algo), r.p}];
            ++row.runs;
            if (r.skipped) {
                ++row.skipped;
                continue;
            }
            row.mismatches += r.match ? 0 : 1;
            row.violations += r.laws_ok ? 0 : 1;
            row.max_span = std::max(row.max_span, r.span);
        }
    }
    out << "selftest n=" << a.cfg.n << " sigma=" << a.cfg.sigma << " trials=" << a.cfg.trials
        << " seed=" << a.cfg.seed << "\n";
    out << std::left << std::setw(13) << "algo" << std::setw(5) << "p" << std::setw(8) << "runs"
        << std::setw(9) << "skipped" << std::setw(12) << "mismatches" << std::setw(12)
        << "violations" << "max_span\n";
    for (const auto& [key, row] : rows) {
        out << std::setw(13) << to_string(static_cast<Algo>(key.first)) << std::setw(5)
            << key.second << std::setw(8) << row.runs << std::setw(9) << row.skipped
            << std::setw(12) << row.mismatches << std::setw(12) << row.violations << row.max_span
            << "\n";
    }
    if (!a.report.empty()) {
        std::ofstream rep(a.report);
        if (!rep) {
            throw std::runtime_error("cannot write " + a.report);
        }
        rep << selftest_json(a.cfg, s) << "\n";
    }
    if (s.ok()) {
        out << "PASS " << s.cases << " cases, " << s.runs - s.skipped << " runs\n";
        return 0;
    }
    out << "FAIL first failing seed " << *s.first_failing_seed << ": " << s.first_failure << "\n";
    return 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Suffix trie/tree indexes with parallel pattern queries", "parsuffix"};
    app.require_subcommand(1);

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Build an index and write it to a container file");
    b->add_option("--text", build.text, "Input text file (raw bytes)")->required();
    b->add_option("--index", build.kind, "trie | tree | interleaved")->required();
    b->add_option("--p", build.p, "Top layer stride for interleaved indexes");
    b->add_option("--out", build.out, "Output container file")->required();

    QueryArgs query;
    auto* q = app.add_subcommand("query", "Answer patterns against a saved index");
    q->add_option("--index", query.index, "Container file")->required();
    q->add_option("--pattern", query.patterns, "Pattern (repeatable)");
    q->add_option("--pattern-file", query.pattern_file, "Newline-separated patterns");
    q->add_option("--algo", query.algo, "seq | trie-par | tree-par2 | interleaved");
    q->add_option("--p", query.p, "Processor count / stride (power of two)");
    q->add_flag("--count", query.count, "Print occurrence counts (default)");
    q->add_flag("--locate", query.locate, "Print sorted 1-based positions");
    q->add_flag("--stats", query.stats, "Append work/span/probe columns");
    q->add_flag("--threads", query.threads, "Run lanes on real threads");

    BenchArgs bench;
    auto* be = app.add_subcommand("bench", "Tabulate work and span over random present patterns");
    be->add_option("--text", bench.text, "Input text file")->required();
    be->add_option("--lengths", bench.lengths, "Pattern lengths")->delimiter(',');
    be->add_option("--trials", bench.trials, "Patterns per length");
    be->add_option("--seed", bench.seed, "RNG seed");
    be->add_flag("--threads", bench.threads, "Run lanes on real threads");

    SelftestArgs self;
    auto* st = app.add_subcommand("selftest", "Randomized oracle comparison of all algorithms");
    st->add_option("--n", self.cfg.n, "Text length");
    st->add_option("--sigma", self.cfg.sigma, "Alphabet size (1..26)");
    st->add_option("--trials", self.cfg.trials, "Number of patterns");
    st->add_option("--seed", self.cfg.seed, "RNG seed (PARSUFFIX_SEED overrides)");
    st->add_option("--report", self.report, "Write a JSON report to this file");
    st->add_flag("--threads", self.threads, "Run lanes on real threads");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (b->parsed()) {
            return cmd_build(build, out);
        }
        if (q->parsed()) {
            return cmd_query(query, out, err);
        }
        if (be->parsed()) {
            return cmd_bench(bench, out);
        }
        return cmd_selftest(self, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run(args, std::cout, std::cerr);
}

} // namespace parsuffix::cli
