#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subposets::cli {

/// Dispatch a full command line (without argv[0]). Data goes to `out`,
/// diagnostics to `err`. Exit status: 0 success, 1 domain/usage error,
/// 2 capacity error, 3 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subposets::cli
