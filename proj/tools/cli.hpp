#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lbpe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs the `lbpe` command line. args[0] is the program name. Standard input
// and output are passed in so the tool can be driven in-process.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace lbpe::cli
