#pragma once

#include <string>
#include <vector>

namespace adok {

// Full command-line front end; returns the process exit code
// (0 success / all checks pass, 1 check failure, 2 usage or config error).
int run_cli(const std::vector<std::string>& args);

}  // namespace adok
