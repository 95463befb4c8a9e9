#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "parsuffix/ancestry.hpp"
#include "parsuffix/halving_dict.hpp"
#include "parsuffix/interleaved.hpp"

namespace parsuffix {

enum class BundleKind : std::uint8_t { trie = 0, tree = 1, interleaved = 2 };
const char* to_string(BundleKind k);

// Everything the query algorithms need for one index kind.
struct IndexBundle {
    BundleKind kind = BundleKind::tree;
    std::string raw;
    std::size_t p = 1;                    // top stride for interleaved bundles
    std::optional<SuffixIndex> index;     // trie or tree
    std::optional<AncestryIndex> anc;     // tree only
    std::optional<PairDict> dict;         // halving dictionary
    std::optional<LayeredIndex> layered;  // interleaved only
};

IndexBundle build_bundle(BundleKind kind, std::string_view raw, std::size_t p = 1);

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint8_t kContainerVersion = 1;

// Binary "PQST" container; layout documented in docs/container.md.
std::string serialize_bundle(const IndexBundle& b);
IndexBundle deserialize_bundle(std::string_view bytes);

void save_bundle(const IndexBundle& b, const std::string& path);
IndexBundle load_bundle(const std::string& path);

} // namespace parsuffix
