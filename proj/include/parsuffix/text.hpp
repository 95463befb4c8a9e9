#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace parsuffix {

// A text symbol: either a byte of the base alphabet or one of the appended
// delimiter sentinels. Delimiters order after every byte, by index.
class Symbol {
public:
    constexpr Symbol() = default;

    static constexpr Symbol base(std::uint8_t c) { return Symbol(c); }

    // index is 1-based: Delimiter(1), Delimiter(2), ...
    static constexpr Symbol delimiter(std::uint32_t index) {
        return Symbol(kDelimiterBase + index);
    }

    static constexpr Symbol from_code(std::uint32_t code) { return Symbol(code); }

    constexpr bool is_delimiter() const { return code_ > 0xFF; }
    constexpr std::uint8_t byte() const { return static_cast<std::uint8_t>(code_); }
    constexpr std::uint32_t delimiter_index() const { return code_ - kDelimiterBase; }
    constexpr std::uint32_t code() const { return code_; }

    constexpr auto operator<=>(const Symbol&) const = default;

private:
    static constexpr std::uint32_t kDelimiterBase = 0xFF;
    constexpr explicit Symbol(std::uint32_t code) : code_(code) {}

    std::uint32_t code_ = 0;
};

using SymbolString = std::vector<Symbol>;

SymbolString to_symbols(std::string_view bytes);

// Printable rendering for diagnostics: bytes as-is, Delimiter(1) as '$',
// Delimiter(2) as '%', higher ones as "<#i>".
std::string render(std::span<const Symbol> symbols);

// The indexed text: n base bytes followed by k delimiter sentinels.
class Text {
public:
    Text() = default;

    const SymbolString& symbols() const { return symbols_; }
    std::size_t base_len() const { return base_len_; }
    std::size_t delimiters() const { return k_; }
    std::size_t size() const { return symbols_.size(); }
    std::string_view raw() const { return raw_; }

    friend Text make_text(std::string_view raw, std::size_t k);

private:
    std::string raw_;
    SymbolString symbols_;
    std::size_t base_len_ = 0;
    std::size_t k_ = 0;
};

Text make_text(std::string_view raw, std::size_t k);

// A query string. Bytes only, so it can never contain a delimiter.
class Pattern {
public:
    explicit Pattern(std::string_view bytes);

    std::size_t size() const { return symbols_.size(); }
    const SymbolString& symbols() const { return symbols_; }
    std::string_view bytes() const { return bytes_; }

private:
    std::string bytes_;
    SymbolString symbols_;
};

// Subsequence i (0-based here) holds X[i], X[i+k], X[i+2k], ...
template <typename T>
std::vector<std::vector<T>> interleave(std::span<const T> x, std::size_t k) {
    if (k == 0) {
        throw std::invalid_argument("interleave: k must be at least 1");
    }
    std::vector<std::vector<T>> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        out[i].reserve(x.size() / k + 1);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i % k].push_back(x[i]);
    }
    return out;
}

inline std::size_t deinterleaved_len(std::size_t l1, std::size_t l2) {
    return std::min(l1, l2) + std::min(l1, l2 + 1);
}

// Alternates x1[0], x2[0], x1[1], ... and truncates to deinterleaved_len.
template <typename T>
std::vector<T> deinterleave2(std::span<const T> x1, std::span<const T> x2) {
    const std::size_t len = deinterleaved_len(x1.size(), x2.size());
    std::vector<T> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(i % 2 == 0 ? x1[i / 2] : x2[i / 2]);
    }
    return out;
}

} // namespace parsuffix
