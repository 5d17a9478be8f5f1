#pragma once

#include <iosfwd>

namespace col::cli {

// Entry point shared by the `col` binary and the tests. Returns the process
// exit code; nothing is written to std::cout/std::cerr directly.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace col::cli
