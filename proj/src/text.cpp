#include "parsuffix/text.hpp"

namespace parsuffix {

SymbolString to_symbols(std::string_view bytes) {
    SymbolString out;
    out.reserve(bytes.size());
    for (char c : bytes) {
        out.push_back(Symbol::base(static_cast<std::uint8_t>(c)));
    }
    return out;
}

std::string render(std::span<const Symbol> symbols) {
    std::string out;
    for (Symbol s : symbols) {
        if (!s.is_delimiter()) {
            out.push_back(static_cast<char>(s.byte()));
        } else if (s.delimiter_index() == 1) {
            out.push_back('$');
        } else if (s.delimiter_index() == 2) {
            out.push_back('%');
        } else {
            out += "<#" + std::to_string(s.delimiter_index()) + ">";
        }
    }
    return out;
}

Text make_text(std::string_view raw, std::size_t k) {
    Text t;
    t.raw_ = std::string(raw);
    t.symbols_ = to_symbols(raw);
    t.symbols_.reserve(raw.size() + k);
    for (std::size_t i = 1; i <= k; ++i) {
        t.symbols_.push_back(Symbol::delimiter(static_cast<std::uint32_t>(i)));
    }
    t.base_len_ = raw.size();
    t.k_ = k;
    return t;
}

Pattern::Pattern(std::string_view bytes) : bytes_(bytes), symbols_(to_symbols(bytes)) {
    if (bytes.empty()) {
        throw std::invalid_argument("pattern must contain at least one symbol");
    }
}

} // namespace parsuffix
