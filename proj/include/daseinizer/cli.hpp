#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace daseinizer {

/// The daseinizer command line. Returns the process exit code:
/// 0 success, 1 domain error, 2 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace daseinizer
