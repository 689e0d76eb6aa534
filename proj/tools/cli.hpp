#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trop::cli {

/// Runs one command. Exit codes: 0 success, 1 input or validation error,
/// 2 violated mathematical invariant.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trop::cli
