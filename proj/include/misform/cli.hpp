#pragma once

#include <string>
#include <vector>

namespace misform {

// Dispatches simulate / explore / verify-mis. Returns the process exit code:
// 0 success, 1 verdict failure (violation, quiescence, dirty exploration,
// not an MIS), 2 budget or round-cap exceeded, 3 usage or parse error.
int run_cli(const std::vector<std::string>& args);

}  // namespace misform
