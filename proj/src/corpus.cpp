#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "parsuffix/harness.hpp"
#include "parsuffix/trie_parallel.hpp"
#include "parsuffix/tree_parallel.hpp"

namespace parsuffix {

const char* to_string(Algo a) {
    switch (a) {
    case Algo::seq_tree:
        return "seq-tree";
    case Algo::trie_par:
        return "trie-par";
    case Algo::tree_par2:
        return "tree-par2";
    case Algo::interleaved:
        return "interleaved";
    }
    return "unknown";
}

std::optional<Algo> parse_algo(std::string_view name) {
    for (Algo a : {Algo::seq_tree, Algo::trie_par, Algo::tree_par2, Algo::interleaved}) {
        if (name == to_string(a)) {
            return a;
        }
    }
    if (name == "seq") {
        return Algo::seq_tree;
    }
    return std::nullopt;
}

Workbench::Workbench(std::string raw, WorkbenchOptions opt) : raw_(std::move(raw)), opt_(opt) {}

const SuffixIndex& Workbench::tree() {
    if (!tree_) {
        tree_ = build_suffix_tree(make_text(raw_, 1));
    }
    return *tree_;
}

const AncestryIndex& Workbench::ancestry() {
    if (!anc_) {
        anc_ = build_ancestry(tree());
    }
    return *anc_;
}

const PairDict& Workbench::tree_dict() {
    if (!tree_dict_) {
        tree_dict_ = build_tree_halving_dict(tree());
    }
    return *tree_dict_;
}

const SuffixIndex& Workbench::trie() {
    if (!has_trie()) {
        throw std::logic_error("text too long for the suffix trie");
    }
    if (!trie_) {
        trie_ = build_suffix_trie(make_text(raw_, 1));
    }
    return *trie_;
}

const PairDict& Workbench::trie_dict() {
    if (!trie_dict_) {
        trie_dict_ = build_trie_halving_dict(trie());
    }
    return *trie_dict_;
}

const LayeredIndex& Workbench::layered() {
    if (!layered_) {
        layered_ = build_layered_index(raw_, opt_.layers_p);
    }
    return *layered_;
}

bool CaseReport::ok() const {
    for (const AlgoRun& r : runs) {
        if (!r.skipped && (!r.match || !r.laws_ok)) {
            return false;
        }
    }
    return true;
}

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

void violate(AlgoRun& run, std::string note) {
    if (run.laws_ok) {
        run.law_note = std::move(note);
    }
    run.laws_ok = false;
}

} // namespace

void check_laws(AlgoRun& run, std::size_t m) {
    const auto& t = run.totals;
    if (run.span > run.work) {
        violate(run, "span exceeds work");
    }
    switch (run.algo) {
    case Algo::seq_tree:
        break;
    case Algo::trie_par: {
        const std::uint64_t p = run.p;
        if (t.nav_chars > m || t.probes > p - 1) {
            violate(run, "trie-par work above m + (p-1)");
        }
        if (run.status == QueryStatus::found && (t.nav_chars != m || t.probes != p - 1)) {
            violate(run, "trie-par work differs from m + (p-1)");
        }
        if (run.span > ceil_div(m, p) + floor_log2(p)) {
            violate(run, "trie-par span above ceil(m/p) + lg p");
        }
        break;
    }
    case Algo::tree_par2:
        if (t.nav_chars > ceil_div(m, 2) + ceil_div(3 * m, 4) + 2) {
            violate(run, "tree-par2 navigation above ceil(m/2) + ceil(3m/4) + 2");
        }
        if (run.span > m + 4) {
            violate(run, "tree-par2 span above m + 4");
        }
        break;
    case Algo::interleaved: {
        for (const LayerStat& l : run.layers) {
            if (!l.pair_bound_ok) {
                violate(run, "interleaved pair probes above 2(|pi1| + |pi2|)");
            }
        }
        const double j = static_cast<double>(run.p);
        const double bound = 4.0 * (static_cast<double>(m) / j) * std::log2(j);
        if (static_cast<double>(run.span) > bound + 1e-9) {
            violate(run, "interleaved span above 4 (m/j) lg j");
        }
        break;
    }
    }
}

AlgoRun run_algo(Workbench& wb, Algo algo, std::size_t p, const std::string& pattern,
                 ExecMode mode) {
    AlgoRun run;
    run.algo = algo;
    run.p = p;
    const std::size_t m = pattern.size();
    auto skip = [&](std::string why) {
        run.skipped = true;
        run.skip_reason = std::move(why);
        return run;
    };
    const Pattern pat(pattern);
    std::optional<QueryResult> res;
    switch (algo) {
    case Algo::seq_tree:
        run.p = 1;
        res = seq_query(wb.tree(), pat);
        break;
    case Algo::trie_par:
        if (!wb.has_trie()) {
            return skip("text above trie limit");
        }
        if (p >= 2 * m) {
            return skip("p >= 2m");
        }
        res = par_query_trie(wb.trie(), wb.trie_dict(), pat, p, mode);
        break;
    case Algo::tree_par2:
        run.p = 2;
        if (m < 2) {
            return skip("m < 2");
        }
        res = par_query_tree2(wb.tree(), wb.ancestry(), wb.tree_dict(), pat, mode);
        break;
    case Algo::interleaved:
        if (p >= 2 * m) {
            return skip("j >= 2m");
        }
        if (p > wb.layered().p()) {
            return skip("j above built layers");
        }
        res = par_query_interleaved(wb.layered(), pat, p, mode);
        break;
    }
    run.status = res->status;
    run.positions = std::move(res->positions);
    run.work = res->ledger.work();
    run.span = res->ledger.span();
    run.total_span = res->ledger.total_span();
    run.totals = res->ledger.totals();
    for (std::uint32_t l = 0; l < res->ledger.lanes(); ++l) {
        run.lane_nav_max = std::max(run.lane_nav_max, res->ledger.counters(l).nav_chars);
    }
    run.layers = std::move(res->layers);
    check_laws(run, m);
    return run;
}

CaseReport run_case(Workbench& wb, const CorpusCase& c, const std::string& pattern,
                    const RunPlan& plan) {
    CaseReport rep;
    rep.c = c;
    rep.pattern = pattern;
    rep.expected = oracle_scan(wb.raw(), pattern);
    for (Algo a : plan.algos) {
        std::vector<std::size_t> ps{1};
        if (a == Algo::trie_par) {
            ps = plan.trie_ps;
        } else if (a == Algo::interleaved) {
            ps = plan.interleaved_js;
        }
        for (std::size_t p : ps) {
            AlgoRun run = run_algo(wb, a, p, pattern, plan.mode);
            run.match = run.skipped || run.positions == rep.expected;
            rep.runs.push_back(std::move(run));
        }
    }
    return rep;
}

SelftestSummary run_selftest(const SelftestConfig& cfg) {
    SelftestSummary s;
    if (cfg.trials == 0) {
        return s;
    }
    const std::size_t texts = std::max<std::size_t>(1, std::min(cfg.texts, cfg.trials));
    std::mt19937_64 rng(cfg.seed);
    std::size_t done = 0;
    for (std::size_t t = 0; t < texts; ++t) {
        const std::uint64_t text_seed = rng();
        Workbench wb(generate_text(text_seed, cfg.n, cfg.sigma));
        const std::size_t here = (cfg.trials - done) / (texts - t);
        for (std::size_t i = 0; i < here; ++i, ++done) {
            CorpusCase c;
            c.seed = rng();
            c.n = cfg.n;
            c.sigma = cfg.sigma;
            const std::size_t cap = i % 2 == 0 ? std::min<std::size_t>(cfg.n, 64) : cfg.n;
            c.m = 1 + std::uniform_int_distribution<std::size_t>(0, std::max<std::size_t>(cap, 1) - 1)(rng);
            c.mode = static_cast<PatternMode>(done % 3);
            if (cfg.n == 0) {
                c.mode = PatternMode::random;
            }
            CaseReport rep = run_case(wb, c, generate_pattern(c, wb.raw()), cfg.plan);
            ++s.cases;
            for (const AlgoRun& r : rep.runs) {
                ++s.runs;
                if (r.skipped) {
                    ++s.skipped;
                    continue;
                }
                if (!r.match) {
                    ++s.mismatches;
                }
                if (!r.laws_ok) {
                    ++s.law_violations;
                }
                if ((!r.match || !r.laws_ok) && !s.first_failing_seed) {
                    s.first_failing_seed = c.seed;
                    std::ostringstream os;
                    os << to_string(r.algo) << " p=" << r.p << " text_seed=" << text_seed
                       << " pattern=" << rep.pattern << ": "
                       << (r.match ? r.law_note : std::string("result differs from oracle"));
                    s.first_failure = os.str();
                }
            }
            s.reports.push_back(std::move(rep));
        }
    }
    return s;
}

std::string selftest_json(const SelftestConfig& cfg, const SelftestSummary& s) {
    using nlohmann::json;
    json doc;
    doc["schema"] = kReportSchema;
    doc["config"] = {{"n", cfg.n},
                     {"sigma", cfg.sigma},
                     {"trials", cfg.trials},
                     {"seed", cfg.seed},
                     {"texts", cfg.texts},
                     {"mode", cfg.plan.mode == ExecMode::threaded ? "threaded" : "simulated"}};
    doc["summary"] = {{"cases", s.cases},
                      {"runs", s.runs},
                      {"skipped", s.skipped},
                      {"mismatches", s.mismatches},
                      {"law_violations", s.law_violations},
                      {"pass", s.ok()}};
    if (s.first_failing_seed) {
        doc["summary"]["first_failing_seed"] = *s.first_failing_seed;
        doc["summary"]["first_failure"] = s.first_failure;
    }
    json cases = json::array();
    for (const CaseReport& rep : s.reports) {
        json runs = json::array();
        for (const AlgoRun& r : rep.runs) {
            json jr = {{"algo", to_string(r.algo)}, {"p", r.p}, {"skipped", r.skipped}};
            if (r.skipped) {
                jr["skip_reason"] = r.skip_reason;
            } else {
                jr["status"] = to_string(r.status);
                jr["match"] = r.match;
                jr["laws_ok"] = r.laws_ok;
                if (!r.laws_ok) {
                    jr["law_note"] = r.law_note;
                }
                jr["count"] = r.positions.size();
                jr["work"] = r.work;
                jr["span"] = r.span;
                jr["total_span"] = r.total_span;
                jr["nav_chars"] = r.totals.nav_chars;
                jr["probes"] = r.totals.probes;
                jr["shortens"] = r.totals.shortens;
                jr["compares"] = r.totals.compares;
            }
            runs.push_back(std::move(jr));
        }
        cases.push_back({{"seed", rep.c.seed},
                         {"n", rep.c.n},
                         {"sigma", rep.c.sigma},
                         {"m", rep.c.m},
                         {"mode", to_string(rep.c.mode)},
                         {"expected_count", rep.expected.size()},
                         {"runs", std::move(runs)}});
    }
    doc["cases"] = std::move(cases);
    return doc.dump(2);
}

} // namespace parsuffix
