#include "parsuffix/step_ledger.hpp"

#include <algorithm>
#include <stdexcept>

namespace parsuffix {

LaneCounters& LaneCounters::operator+=(const LaneCounters& o) {
    nav_chars += o.nav_chars;
    nav_hops += o.nav_hops;
    probes += o.probes;
    shortens += o.shortens;
    compares += o.compares;
    return *this;
}

StepLedger::StepLedger(std::size_t lanes) : lanes_(std::max<std::size_t>(lanes, 1)) {}

EventRef StepLedger::record(std::uint32_t lane, StepKind kind, std::uint32_t units,
                            std::uint32_t duration, std::vector<EventRef> deps, bool sequenced) {
    if (lane >= lanes_.size()) {
        throw std::out_of_range("ledger lane out of range");
    }
    auto& log = lanes_[lane];
    for (const EventRef& d : deps) {
        if (d.lane >= lanes_.size()) {
            throw std::out_of_range("ledger dependency lane out of range");
        }
    }
    log.push_back(StepEvent{kind, phase_, units, duration, sequenced, std::move(deps)});
    return EventRef{lane, static_cast<std::uint32_t>(log.size() - 1)};
}

EventRef StepLedger::nav(std::uint32_t lane, std::uint32_t chars, std::vector<EventRef> deps) {
    return record(lane, StepKind::nav, chars, std::max<std::uint32_t>(chars, 1), std::move(deps));
}

EventRef StepLedger::probe(std::uint32_t lane, std::vector<EventRef> deps, bool sequenced) {
    return record(lane, StepKind::probe, 1, 1, std::move(deps), sequenced);
}

void StepLedger::barrier() {
    std::vector<EventRef> all;
    for (std::uint32_t l = 0; l < lanes_.size(); ++l) {
        if (auto e = last(l)) {
            all.push_back(*e);
        }
    }
    for (std::uint32_t l = 0; l < lanes_.size(); ++l) {
        record(l, StepKind::barrier, 0, 0, all);
    }
}

std::optional<EventRef> StepLedger::last(std::uint32_t lane) const {
    if (lanes_[lane].empty()) {
        return std::nullopt;
    }
    return EventRef{lane, static_cast<std::uint32_t>(lanes_[lane].size() - 1)};
}

LaneCounters StepLedger::counters(std::uint32_t lane) const {
    LaneCounters c;
    for (const StepEvent& e : lanes_[lane]) {
        switch (e.kind) {
        case StepKind::nav:
            c.nav_chars += e.units;
            ++c.nav_hops;
            break;
        case StepKind::probe:
            c.probes += e.units;
            break;
        case StepKind::shorten:
            c.shortens += e.units;
            break;
        case StepKind::compare:
            c.compares += e.units;
            break;
        case StepKind::barrier:
            break;
        }
    }
    return c;
}

LaneCounters StepLedger::totals() const {
    LaneCounters c;
    for (std::uint32_t l = 0; l < lanes_.size(); ++l) {
        c += counters(l);
    }
    return c;
}

std::uint64_t StepLedger::work() const {
    std::uint64_t w = 0;
    for (const auto& log : lanes_) {
        for (const StepEvent& e : log) {
            w += e.duration;
        }
    }
    return w;
}

std::uint64_t StepLedger::span() const { return schedule(false); }

std::uint64_t StepLedger::total_span() const { return schedule(true); }

std::uint64_t StepLedger::schedule(bool include_verify) const {
    // finish[l][i], computed on demand; dependencies always point at events
    // recorded earlier in real time, so the graph is acyclic.
    constexpr std::uint64_t kUnset = ~std::uint64_t{0};
    std::vector<std::vector<std::uint64_t>> finish(lanes_.size());
    // prev_seq[l][i]: index of the closest sequenced event before i, or -1
    std::vector<std::vector<std::int64_t>> prev_seq(lanes_.size());
    for (std::size_t l = 0; l < lanes_.size(); ++l) {
        finish[l].assign(lanes_[l].size(), kUnset);
        prev_seq[l].resize(lanes_[l].size());
        std::int64_t p = -1;
        for (std::size_t i = 0; i < lanes_[l].size(); ++i) {
            prev_seq[l][i] = p;
            if (lanes_[l][i].sequenced) {
                p = static_cast<std::int64_t>(i);
            }
        }
    }

    std::uint64_t best = 0;
    std::vector<EventRef> stack;
    for (std::uint32_t l = 0; l < lanes_.size(); ++l) {
        for (std::uint32_t i = 0; i < lanes_[l].size(); ++i) {
            stack.push_back({l, i});
            while (!stack.empty()) {
                const EventRef cur = stack.back();
                if (finish[cur.lane][cur.index] != kUnset) {
                    stack.pop_back();
                    continue;
                }
                const StepEvent& e = lanes_[cur.lane][cur.index];
                std::uint64_t start = 0;
                bool ready = true;
                auto need = [&](EventRef d) {
                    const std::uint64_t f = finish[d.lane][d.index];
                    if (f == kUnset) {
                        stack.push_back(d);
                        ready = false;
                    } else {
                        start = std::max(start, f);
                    }
                };
                if (e.sequenced && prev_seq[cur.lane][cur.index] >= 0) {
                    need({cur.lane, static_cast<std::uint32_t>(prev_seq[cur.lane][cur.index])});
                }
                for (const EventRef& d : e.deps) {
                    need(d);
                }
                if (ready) {
                    finish[cur.lane][cur.index] = start + e.duration;
                    stack.pop_back();
                }
            }
            const StepEvent& e = lanes_[l][i];
            if (include_verify || e.phase == Phase::query) {
                best = std::max(best, finish[l][i]);
            }
        }
    }
    return best;
}

const char* to_string(QueryStatus s) {
    switch (s) {
    case QueryStatus::found:
        return "found";
    case QueryStatus::nav_failed:
        return "nav-failed";
    case QueryStatus::probe_failed:
        return "probe-failed";
    case QueryStatus::verify_failed:
        return "verify-failed";
    case QueryStatus::not_found:
        return "not-found";
    }
    return "unknown";
}

QueryResult seq_query(const SuffixIndex& index, const Pattern& pat) {
    QueryResult res;
    const auto q = std::span<const Symbol>(pat.symbols());
    const auto m = static_cast<std::uint32_t>(q.size());
    NodeId cur = SuffixIndex::root();
    while (index.cum(cur) < m) {
        const NodeId next = index.child(cur, q[index.cum(cur)]);
        if (next == kNoNode) {
            res.status = QueryStatus::nav_failed;
            return res;
        }
        res.ledger.nav(0, std::min(index.cum(next), m) - index.cum(cur));
        cur = next;
    }
    if (index.kind() == IndexKind::tree) {
        res.ledger.set_phase(Phase::verify);
        res.ledger.record(0, StepKind::compare, m, m);
        if (!verify_against_text(index, cur, q)) {
            res.status = QueryStatus::verify_failed;
            return res;
        }
    }
    res.node = cur;
    res.positions = occurrences(index, cur);
    res.status = QueryStatus::found;
    return res;
}

} // namespace parsuffix
