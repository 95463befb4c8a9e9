#pragma once

// Brute-force helpers shared by the unit tests. Nothing here calls the
// library's navigation code, so the tests can use it as an oracle.

#include <algorithm>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "parsuffix/suffix_index.hpp"

namespace testsupport {

using parsuffix::NodeId;
using parsuffix::SuffixIndex;
using parsuffix::Symbol;
using parsuffix::SymbolString;

// '$' -> Delimiter(1), '%' -> Delimiter(2), '#' -> Delimiter(3), '&' -> Delimiter(4)
inline SymbolString syms(std::string_view s) {
    SymbolString out;
    for (char c : s) {
        switch (c) {
        case '$':
            out.push_back(Symbol::delimiter(1));
            break;
        case '%':
            out.push_back(Symbol::delimiter(2));
            break;
        case '#':
            out.push_back(Symbol::delimiter(3));
            break;
        case '&':
            out.push_back(Symbol::delimiter(4));
            break;
        default:
            out.push_back(Symbol::base(static_cast<std::uint8_t>(c)));
        }
    }
    return out;
}

inline SymbolString label_of(const SuffixIndex& idx, NodeId v) {
    const auto l = idx.label(v);
    return SymbolString(l.begin(), l.end());
}

inline SymbolString shortest_of(const SuffixIndex& idx, NodeId v) {
    SymbolString l = label_of(idx, v);
    l.resize(idx.shortest_len(v));
    return l;
}

inline bool is_prefix(const SymbolString& p, const SymbolString& s) {
    return p.size() <= s.size() && std::equal(p.begin(), p.end(), s.begin());
}

// Node whose string range contains s, found by scanning every node.
inline NodeId brute_locus(const SuffixIndex& idx, const SymbolString& s) {
    if (s.empty()) {
        return SuffixIndex::root();
    }
    for (NodeId v = 1; v < idx.size(); ++v) {
        if (idx.shortest_len(v) <= s.size() && s.size() <= idx.cum(v) &&
            is_prefix(s, label_of(idx, v))) {
            return v;
        }
    }
    return parsuffix::kNoNode;
}

// Node whose longest string equals s exactly.
inline NodeId node_spelling(const SuffixIndex& idx, std::string_view s) {
    const SymbolString want = syms(s);
    for (NodeId v = 0; v < idx.size(); ++v) {
        if (label_of(idx, v) == want) {
            return v;
        }
    }
    return parsuffix::kNoNode;
}

inline NodeId locus_of(const SuffixIndex& idx, std::string_view s) {
    return brute_locus(idx, syms(s));
}

// Distinct non-empty substrings that do not cross a segment boundary.
inline std::set<SymbolString> distinct_substrings(const std::vector<SymbolString>& segs) {
    std::set<SymbolString> out;
    for (const auto& s : segs) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j <= s.size(); ++j) {
                out.emplace(s.begin() + static_cast<std::ptrdiff_t>(i),
                            s.begin() + static_cast<std::ptrdiff_t>(j));
            }
        }
    }
    return out;
}

// Strings at which a suffix tree must branch: the root, every suffix, and
// every substring followed by two different symbols somewhere.
inline std::set<SymbolString> tree_node_strings(const std::vector<SymbolString>& segs) {
    std::set<SymbolString> out{SymbolString{}};
    std::set<std::pair<SymbolString, Symbol>> followers;
    for (const auto& s : segs) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            out.emplace(s.begin() + static_cast<std::ptrdiff_t>(i), s.end());
            for (std::size_t j = i; j < s.size(); ++j) {
                followers.emplace(SymbolString(s.begin() + static_cast<std::ptrdiff_t>(i),
                                               s.begin() + static_cast<std::ptrdiff_t>(j)),
                                  s[j]);
            }
        }
    }
    SymbolString prev;
    bool have_prev = false;
    for (const auto& [str, sym] : followers) {
        if (have_prev && str == prev) {
            out.insert(str);
        }
        prev = str;
        have_prev = true;
    }
    return out;
}

} // namespace testsupport
