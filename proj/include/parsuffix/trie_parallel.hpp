#pragma once

#include <cstddef>
#include <vector>

#include "parsuffix/halving_dict.hpp"
#include "parsuffix/step_ledger.hpp"

namespace parsuffix {

struct SubqueryAssignment {
    std::size_t p = 0;
    std::vector<std::size_t> lengths;
    std::vector<std::size_t> offsets;  // 1-based start of each chunk
};

bool is_power_of_two(std::size_t x);
std::size_t floor_log2(std::size_t x);

// Recursive halving: m splits into ceil(m/2) | floor(m/2), lg p times.
// Throws std::invalid_argument unless p is a power of two with p < 2m.
SubqueryAssignment assign_subqueries(std::size_t m, std::size_t p);

// p lanes navigate their chunks from the root, then lg p rounds of pairwise
// probes merge neighbouring chunk nodes.
QueryResult par_query_trie(const SuffixIndex& trie, const PairDict& dict, const Pattern& pat,
                           std::size_t p, ExecMode mode = ExecMode::simulated);

} // namespace parsuffix
