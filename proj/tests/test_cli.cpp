#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

std::string tmp(const std::string& name) {
    const char* dir = std::getenv("PARSUFFIX_TMP");
    return std::string(dir ? dir : ".") + "/cli_" + name;
}

void write(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = parsuffix::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string build(const std::string& kind, const std::string& text, const std::string& p = "") {
    const std::string txt = tmp(kind + p + ".txt");
    const std::string idx = tmp(kind + p + ".idx");
    write(txt, text);
    std::vector<std::string> args{"build", "--text", txt, "--index", kind, "--out", idx};
    if (!p.empty()) {
        args.insert(args.end(), {"--p", p});
    }
    const Run r = cli(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return idx;
}

} // namespace

TEST_CASE("build a tree over ABRACADABRA") {
    const std::string txt = tmp("abra.txt");
    write(txt, "ABRACADABRA");
    const Run r = cli({"build", "--text", txt, "--index", "tree", "--out", tmp("abra.idx")});
    CHECK(r.code == 0);
    CHECK(r.out.find("nodes=17") != std::string::npos);
}

TEST_CASE("query examples") {
    const std::string tree = build("tree", "ABRACADABRA");
    CHECK(cli({"query", "--index", tree, "--pattern", "ABRA", "--algo", "seq", "--locate"}).out ==
          "1 8\n");
    CHECK(cli({"query", "--index", tree, "--pattern", "A", "--algo", "seq", "--count"}).out ==
          "5\n");
    CHECK(cli({"query", "--index", tree, "--pattern", "ABRA", "--pattern", "ZZZ", "--algo",
               "tree-par2", "--locate"})
              .out == "1 8\n\n");
    CHECK(cli({"query", "--index", tree, "--pattern", "XYZ"}).out == "0\n");

    const std::string layered = build("interleaved", "ABRACADABRA", "4");
    CHECK(cli({"query", "--index", layered, "--pattern", "ABRA", "--algo", "interleaved", "--p",
               "4", "--count"})
              .out == "2\n");

    const std::string trie = build("trie", "ABRACADABRA");
    const Run stats = cli({"query", "--index", trie, "--pattern", "ABRA", "--algo", "trie-par",
                           "--p", "4", "--stats", "--threads"});
    CHECK(stats.code == 0);
    CHECK(stats.out.rfind("2\twork=", 0) == 0);
    CHECK(stats.out.find("probes=3") != std::string::npos);
}

TEST_CASE("query clamps p and falls back for short patterns") {
    const std::string trie = build("trie", "ABRACADABRA");
    const Run r = cli({"query", "--index", trie, "--pattern", "AB", "--algo", "trie-par", "--p",
                       "16", "--locate"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 8\n");
    CHECK(r.err.find("warning") != std::string::npos);

    const std::string tree = build("tree", "ABRACADABRA");
    const Run one = cli({"query", "--index", tree, "--pattern", "C", "--algo", "tree-par2"});
    CHECK(one.out == "1\n");
    CHECK(one.err.find("warning") != std::string::npos);
}

TEST_CASE("query reads a pattern file") {
    const std::string tree = build("tree", "ABRACADABRA");
    write(tmp("patterns.txt"), "ABRA\nCAD\r\n\nBR\n");
    CHECK(cli({"query", "--index", tree, "--pattern-file", tmp("patterns.txt"), "--locate"}).out ==
          "1 8\n5\n2 9\n");
}

TEST_CASE("parameter errors") {
    const std::string txt = tmp("p3.txt");
    write(txt, "ABRACADABRA");
    CHECK(cli({"build", "--text", txt, "--index", "interleaved", "--p", "3", "--out",
               tmp("p3.idx")})
              .code != 0);
    CHECK(cli({"build", "--text", tmp("missing.txt"), "--index", "tree", "--out", tmp("m.idx")})
              .code != 0);
    const std::string tree = build("tree", "ABRACADABRA");
    CHECK(cli({"query", "--index", tree, "--pattern", "AB", "--algo", "trie-par"}).code != 0);
    CHECK(cli({"query", "--index", tree, "--pattern", "AB", "--count", "--locate"}).code != 0);
    CHECK(cli({"query", "--index", tree}).code != 0);
    CHECK(cli({"query", "--index", tree, "--pattern", "AB", "--algo", "nope"}).code != 0);
    CHECK(cli({}).code == 2);
    CHECK(cli({"build", "--text", txt}).code == 2);
}

TEST_CASE("empty text builds a trie over the delimiter alone") {
    const std::string idx = build("trie", "");
    CHECK(cli({"query", "--index", idx, "--pattern", "A"}).out == "0\n");
}

TEST_CASE("corrupted index fails to load") {
    const std::string tree = build("tree", "ABRACADABRA");
    std::string bytes;
    {
        std::ifstream in(tree, std::ios::binary);
        bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    bytes[bytes.size() / 2] ^= 0x5A;
    write(tmp("bad.idx"), bytes);
    const Run r = cli({"query", "--index", tmp("bad.idx"), "--pattern", "A"});
    CHECK(r.code != 0);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("selftest") {
    const Run pass = cli({"selftest", "--n", "256", "--sigma", "4", "--trials", "200", "--seed",
                          "1", "--report", tmp("report.json")});
    CHECK(pass.code == 0);
    CHECK(pass.out.find("PASS") != std::string::npos);
    std::ifstream in(tmp("report.json"));
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["summary"]["cases"] == 200);

    const Run vacuous = cli({"selftest", "--trials", "0"});
    CHECK(vacuous.code == 0);
    CHECK(vacuous.out.find("PASS 0 cases") != std::string::npos);

    CHECK(cli({"selftest", "--sigma", "27"}).code == 2);
}

TEST_CASE("bench prints a table") {
    const std::string txt = tmp("bench.txt");
    write(txt, "ABRACADABRAABRACADABRA");
    const Run r = cli({"bench", "--text", txt, "--lengths", "2,4", "--trials", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("tree-par2") != std::string::npos);
    CHECK(r.out.find("NO") == std::string::npos);
}
