#pragma once

#include <istream>
#include <string>
#include <vector>

namespace kwp::cli {

struct Dataset {
  std::string id;
  std::vector<double> values;
};

/// One number per record.  Lines whose first non-blank character is '#'
/// and blank lines are skipped; the first remaining line may be a header.
/// Throws InputError naming the offending line for anything else that does
/// not parse as a positive finite number, and for an empty input.
std::vector<double> read_values(std::istream& in, const std::string& name);

/// "wheaton" (or "embedded:wheaton") selects the embedded data; anything
/// else is read as a file path.
Dataset load_dataset(const std::string& source);

}  // namespace kwp::cli
