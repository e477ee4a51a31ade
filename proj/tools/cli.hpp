#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace catenae::cli {

/// Runs one invocation. `args` excludes the program name. Primary output goes
/// to `out` unless --out names a file; diagnostics go to `err`.
/// Returns 0 on success, 1 on usage errors, 2 on data errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catenae::cli
