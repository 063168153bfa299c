#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semicrit {

// Programmatic CLI entry used by both the binary and the tests.
// Exit codes: 0 success, 1 suite failure, 2 usage error, 3 internal error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semicrit
