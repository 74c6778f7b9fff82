#ifndef MIMEMA_TOOLS_CLI_H_
#define MIMEMA_TOOLS_CLI_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace mimema::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitUsageError = 2;

// Runs one invocation. `args` excludes the program name. Input files named
// "-" (the default) read from `in`.
int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace mimema::cli

#endif  // MIMEMA_TOOLS_CLI_H_
