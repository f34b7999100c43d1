#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualcube::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by the dualcube tool and the tests. `args` excludes the
// program name. Results go to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dualcube::cli
