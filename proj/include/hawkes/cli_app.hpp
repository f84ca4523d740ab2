#pragma once

#include <string>
#include <vector>

namespace hawkes {

// Entry point behind the binary, exposed for tests.
// Exit codes: 0 success, 1 config/usage error, 2 numeric failure,
// 3 validation z-score breach.
int run(const std::vector<std::string>& args);

} // namespace hawkes
