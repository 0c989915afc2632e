#pragma once

#include <iosfwd>

namespace jt::cli {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

// Parses argv and runs one subcommand.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace jt::cli
