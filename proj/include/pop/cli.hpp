#pragma once

#include <string>
#include <vector>

namespace pop {

// Command-line front end. Returns the process exit code:
// 0 success, 1 bad input or usage, 2 internal assertion failure.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // without argv[0]

}  // namespace pop
