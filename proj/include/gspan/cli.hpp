#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gspan::cli {

/// Runs one command (args exclude the program name). Writes the JSON report
/// to `out`, or a CSV matrix to `out` and the report to `err` under
/// --format csv. Returns 0 when every clause passes, 1 when one fails, 2 on
/// an input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gspan::cli
