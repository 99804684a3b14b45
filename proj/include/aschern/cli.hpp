#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aschern {

/// Runs `aschern <gen|pair|check> ...`. The report goes to `out` as JSON,
/// diagnostics to `err`. Returns 0 when every check passes, 2 on bad input or
/// an inadmissible sample, 3 when a numerical check fails.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aschern
