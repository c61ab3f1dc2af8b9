#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kwp/serialize.hpp"

namespace kwp::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNotConverged = 3, kDomainError = 4 };

/// Entry point of the kwp tool.  args excludes the program name.  Output
/// goes to out unless --out names a file; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Document emitted by the properties subcommand.  Quantities that are
/// infinite for the given parameters appear as
/// {"exists": false, "reason": "..."}.
json properties_report(const KwPParams& p, int max_moment, const std::vector<double>& deltas,
                       const std::vector<double>& mgf_points, int l_count);

}  // namespace kwp::cli
