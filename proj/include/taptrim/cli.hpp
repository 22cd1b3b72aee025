#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace taptrim {

// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;   // parse or I/O failure
inline constexpr int kExitVerify = 3;  // link verification failed

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace taptrim
