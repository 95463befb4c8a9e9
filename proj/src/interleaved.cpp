#include "parsuffix/interleaved.hpp"

#include <stdexcept>
#include <string>
#include <thread>

#include "parsuffix/trie_parallel.hpp"

namespace parsuffix {

std::size_t LayeredIndex::layer_of(std::size_t k) const {
    for (std::size_t i = 0; i < layers.size(); ++i) {
        if (layers[i].k == k) {
            return i;
        }
    }
    throw std::out_of_range("no layer with stride " + std::to_string(k));
}

LayerIndex build_layer(std::string_view raw, std::size_t k) {
    if (!is_power_of_two(k)) {
        throw std::invalid_argument("layer stride must be a power of two");
    }
    const Text text = make_text(raw, k);
    return LayerIndex{k, build_suffix_tree(interleaved_sequences(text, k))};
}

PairDict build_layer_dict(const LayerIndex& upper, const LayerIndex& lower) {
    if (upper.k != 2 * lower.k) {
        throw std::invalid_argument("layer dictionary needs strides k and k/2");
    }
    const SuffixIndex& up = upper.tree;
    const SuffixIndex& lo = lower.tree;
    const auto seq = lo.seq();
    PairDict dict(up.uid(), lo.uid());
    dict.insert(SuffixIndex::root(), SuffixIndex::root(), SuffixIndex::root());
    SymbolString s1;
    SymbolString s2;
    for (NodeId w = 1; w < lo.size(); ++w) {
        const std::uint32_t len = lo.shortest_len(w);
        const std::uint32_t r = lo.node(w).lref;
        s1.clear();
        s2.clear();
        for (std::uint32_t i = 0; i < len; ++i) {
            (i % 2 == 0 ? s1 : s2).push_back(seq[r + i]);
        }
        const NodeId w1 = locus(up, s1);
        const NodeId w2 = locus(up, s2);
        if (w1 == kNoNode || w2 == kNoNode) {
            throw std::logic_error("layer " + std::to_string(upper.k) +
                                   " is missing a half of lower node " + std::to_string(w));
        }
        if (!dict.insert(w1, w2, w)) {
            throw std::logic_error("layer pair collision at lower node " + std::to_string(w));
        }
    }
    return dict;
}

LayeredIndex build_layered_index(std::string_view raw, std::size_t p) {
    if (p < 2 || !is_power_of_two(p)) {
        throw std::invalid_argument("layered index needs a power of two p >= 2");
    }
    LayeredIndex out;
    out.raw = std::string(raw);
    for (std::size_t k = 1; k <= p; k *= 2) {
        out.layers.push_back(build_layer(raw, k));
    }
    for (std::size_t i = 1; i < out.layers.size(); ++i) {
        out.dicts.push_back(build_layer_dict(out.layers[i], out.layers[i - 1]));
    }
    return out;
}

MergeOutcome deinterleave_paths(const SuffixIndex& upper, const SuffixIndex& lower,
                                const PairDict& dict, const NavPath& path1,
                                const NavPath& path2, std::size_t target_len,
                                const std::function<void(std::uint64_t)>& on_probe) {
    MergeOutcome out;
    const auto& a = path1.nodes;
    const auto& b = path2.nodes;
    if (a.empty() || b.empty()) {
        return out;
    }
    std::size_t i = 0;
    std::size_t j = 0;
    for (;;) {
        const bool more1 = i + 1 < a.size();
        const bool more2 = j + 1 < b.size();
        if (!more1 && !more2) {
            break;
        }
        // Symbol 2c+1 of the merged string comes from path 1, 2c+2 from path 2.
        if (more1 && (!more2 || a[i].cum <= b[j].cum)) {
            ++i;
        } else {
            ++j;
        }
        if (on_probe) {
            on_probe(out.probes);
        }
        ++out.probes;
        const auto hit = dict.probe(upper, a[i].node, b[j].node);
        if (!hit || lower.shortest_len(*hit) > target_len) {
            continue;
        }
        const std::uint32_t c = lower.cum(*hit);
        if (out.path.nodes.empty() || out.path.nodes.back().cum < c) {
            out.path.nodes.push_back({*hit, c});
        }
    }
    return out;
}

SymbolString query_piece(std::span<const Symbol> q, std::size_t i, std::size_t j) {
    SymbolString out;
    for (std::size_t p = i; p < q.size(); p += j) {
        out.push_back(q[p]);
    }
    return out;
}

namespace {

NavPath navigate_lane(const SuffixIndex& tree, std::span<const Symbol> piece, std::uint32_t lane,
                      StepLedger& ledger) {
    NavPath path;
    const auto len = static_cast<std::uint32_t>(piece.size());
    NodeId cur = SuffixIndex::root();
    path.nodes.push_back({cur, 0});
    while (tree.cum(cur) < len) {
        const NodeId next = tree.child(cur, piece[tree.cum(cur)]);
        if (next == kNoNode) {
            path.status = NavStatus::fell_off;
            return path;
        }
        ledger.nav(lane, std::min(tree.cum(next), len) - tree.cum(cur));
        cur = next;
        path.nodes.push_back({cur, tree.cum(cur)});
    }
    path.status = NavStatus::full_match;
    return path;
}

template <typename Fn>
void run_all(std::size_t count, ExecMode mode, Fn&& fn) {
    if (mode == ExecMode::threaded && count > 1) {
        std::vector<std::jthread> workers;
        workers.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            workers.emplace_back([&fn, i] { fn(i); });
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
    }
}

} // namespace

QueryResult par_query_interleaved(const LayeredIndex& index, const Pattern& pat, std::size_t j,
                                  ExecMode mode) {
    const std::size_t m = pat.size();
    if (!is_power_of_two(j) || j < 2 || j > index.p()) {
        throw std::invalid_argument("stride j must be a power of two in [2, p]");
    }
    if (j >= 2 * m) {
        throw std::invalid_argument("stride j must be below 2m");
    }
    const auto q = std::span<const Symbol>(pat.symbols());
    QueryResult res;
    res.ledger = StepLedger(j);

    std::vector<NavPath> paths(j);
    const SuffixIndex& top = index.layers[index.layer_of(j)].tree;
    run_all(j, mode, [&](std::size_t i) {
        const SymbolString piece = query_piece(q, i, j);
        paths[i] = navigate_lane(top, piece, static_cast<std::uint32_t>(i), res.ledger);
    });
    for (const NavPath& p : paths) {
        if (p.status == NavStatus::fell_off) {
            res.status = QueryStatus::nav_failed;
            return res;
        }
    }

    for (std::size_t k = j; k >= 2; k /= 2) {
        res.ledger.barrier();
        const std::size_t li = index.layer_of(k);
        const SuffixIndex& upper = index.layers[li].tree;
        const SuffixIndex& lower = index.layers[li - 1].tree;
        const PairDict& dict = index.dicts[li - 1];
        const std::size_t half = k / 2;
        const std::size_t share = j / half;  // lanes available to each pair

        std::vector<NavPath> next(half);
        std::vector<std::uint64_t> probes(half);
        run_all(half, mode, [&](std::size_t i) {
            const std::size_t target = (m > i) ? (m - i + half - 1) / half : 0;
            auto charge = [&](std::uint64_t s) {
                res.ledger.probe(static_cast<std::uint32_t>(i + (s % share) * half));
            };
            MergeOutcome mo =
                deinterleave_paths(upper, lower, dict, paths[i], paths[i + half], target, charge);
            probes[i] = mo.probes;
            next[i].nodes.push_back({SuffixIndex::root(), 0});
            next[i].nodes.insert(next[i].nodes.end(), mo.path.nodes.begin(), mo.path.nodes.end());
        });

        LayerStat stat;
        stat.k = static_cast<std::uint32_t>(k);
        for (std::size_t i = 0; i < half; ++i) {
            const std::uint64_t nodes = paths[i].nodes.size() + paths[i + half].nodes.size();
            stat.probes += probes[i];
            stat.path_nodes += nodes;
            if (probes[i] > 2 * nodes) {
                stat.pair_bound_ok = false;
            }
            if (probes[i] >= stat.max_pair_probes) {
                stat.max_pair_probes = probes[i];
                stat.max_pair_bound = 2 * nodes;
            }
        }
        res.layers.push_back(stat);
        paths = std::move(next);
    }

    const SuffixIndex& tree = index.layers[0].tree;
    std::optional<NodeId> node;
    for (const PathEntry& e : paths[0].nodes) {
        if (e.cum >= m) {
            node = e.node;
            break;
        }
    }
    if (!node) {
        res.status = QueryStatus::not_found;
        return res;
    }

    res.ledger.set_phase(Phase::verify);
    res.ledger.barrier();
    const std::size_t chunk = (m + j - 1) / j;
    for (std::size_t i = 0; i < j && i * chunk < m; ++i) {
        const auto len = static_cast<std::uint32_t>(std::min(chunk, m - i * chunk));
        res.ledger.record(static_cast<std::uint32_t>(i), StepKind::compare, len, len);
    }
    if (!verify_against_text(tree, *node, q)) {
        res.status = QueryStatus::verify_failed;
        return res;
    }
    res.node = node;
    res.positions = occurrences(tree, *node);
    res.status = QueryStatus::found;
    return res;
}

} // namespace parsuffix
