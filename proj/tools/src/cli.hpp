#pragma once

#include <string>
#include <vector>

namespace mnctool {

// Full command-line entry point, callable in-process (tests use this).
// `args` excludes the program name.  Returns the process exit code:
// 0 success, 2 config error, 4 assertion failures, 3 anything else.
int run_cli(const std::vector<std::string>& args);

}
