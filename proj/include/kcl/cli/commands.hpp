#pragma once

#include <iosfwd>

namespace kcl::cli {

// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage/config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kcl::cli
