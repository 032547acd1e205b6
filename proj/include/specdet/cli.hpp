#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specdet {

/// Entry point of the `specdet` tool; `args` excludes the program name.
/// Reports go to `out`, summaries and diagnostics to `err`. Returns the exit
/// code: 0 success, 1 failed check or evaluation error, 2 bad usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace specdet
