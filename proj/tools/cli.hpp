#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace parsuffix::cli {

// Entry point behind the `parsuffix` binary. Returns the process exit code.
int run(int argc, char** argv);

// Same, with explicit streams; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace parsuffix::cli
