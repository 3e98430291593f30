#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rewardlab {

// Full command-line surface (score / simulate / analyze / schedule).
// Returns the process exit code; all output goes through the two streams so
// tests can drive commands in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rewardlab
