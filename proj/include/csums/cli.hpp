// cli.hpp
//
// Entry point of the `csums` command line tool, callable in-process so the
// test suites can drive every subcommand and compare outputs.
//
// Exit codes: 0 success, 1 usage error, 2 guard or memory violation.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace csums {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitGuard = 2;

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csums
