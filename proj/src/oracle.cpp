#include <algorithm>
#include <random>
#include <stdexcept>

#include "parsuffix/harness.hpp"

namespace parsuffix {

std::vector<std::uint32_t> oracle_scan(std::string_view raw, std::string_view pat) {
    std::vector<std::uint32_t> out;
    if (pat.empty() || pat.size() > raw.size()) {
        return out;
    }
    for (std::size_t i = 0; i + pat.size() <= raw.size(); ++i) {
        if (raw.compare(i, pat.size(), pat) == 0) {
            out.push_back(static_cast<std::uint32_t>(i + 1));
        }
    }
    return out;
}

std::vector<std::uint32_t> oracle_scan(const Text& text, const Pattern& pat) {
    return oracle_scan(text.raw(), pat.bytes());
}

const char* to_string(PatternMode mode) {
    switch (mode) {
    case PatternMode::present:
        return "present";
    case PatternMode::random:
        return "random";
    case PatternMode::mutated:
        return "mutated";
    }
    return "unknown";
}

std::string generate_text(std::uint64_t seed, std::size_t n, std::size_t sigma) {
    if (sigma == 0 || sigma > 26) {
        throw std::invalid_argument("sigma must be in 1..26");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(sigma) - 1);
    std::string out(n, 'A');
    for (char& c : out) {
        c = static_cast<char>('A' + pick(rng));
    }
    return out;
}

std::string generate_pattern(const CorpusCase& c, std::string_view text) {
    if (c.m == 0) {
        throw std::invalid_argument("pattern length must be at least 1");
    }
    std::mt19937_64 rng(c.seed ^ 0x9E3779B97F4A7C15ULL);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(c.sigma) - 1);
    if (c.mode == PatternMode::random || c.m > text.size()) {
        std::string out(c.m, 'A');
        for (char& ch : out) {
            ch = static_cast<char>('A' + pick(rng));
        }
        return out;
    }
    std::uniform_int_distribution<std::size_t> start(0, text.size() - c.m);
    std::string out(text.substr(start(rng), c.m));
    if (c.mode == PatternMode::mutated) {
        std::uniform_int_distribution<std::size_t> where(0, c.m - 1);
        char& ch = out[where(rng)];
        // sigma == 1 mutates to a symbol outside the text's alphabet
        const int span = static_cast<int>(std::max<std::size_t>(c.sigma, 2));
        std::uniform_int_distribution<int> shift(1, span - 1);
        ch = static_cast<char>('A' + (ch - 'A' + shift(rng)) % span);
    }
    return out;
}

} // namespace parsuffix
