#pragma once

#include <iosfwd>

namespace heh::cli {

// Entry point of the `heh` interpreter. Returns the process exit code:
// 0 on success, 1 on an evaluation error, 2 on a usage error.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace heh::cli
