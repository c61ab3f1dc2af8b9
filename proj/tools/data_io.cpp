#include "data_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "kwp/datasets.hpp"
#include "kwp/errors.hpp"

namespace kwp::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_number(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::vector<double> read_values(std::istream& in, const std::string& name) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool seen_record = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string field = trim(line);
    if (field.empty() || field.front() == '#') continue;
    // A single trailing separator is tolerated ("1.7," from spreadsheet exports).
    if (field.back() == ',' || field.back() == ';') field = trim(field.substr(0, field.size() - 1));
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') field = field.substr(1, field.size() - 2);
    double v = 0.0;
    if (!parse_number(field, v)) {
      if (!seen_record) {
        seen_record = true;  // header
        continue;
      }
      throw InputError(name + ":" + std::to_string(lineno) + ": not a number: '" + field + "'");
    }
    seen_record = true;
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw InputError(name + ":" + std::to_string(lineno) + ": value must be positive and finite, got " + field);
    }
    values.push_back(v);
  }
  if (values.empty()) throw InputError(name + ": no data values found");
  return values;
}

Dataset load_dataset(const std::string& source) {
  std::string key = source;
  if (key.rfind("embedded:", 0) == 0) key = key.substr(9);
  if (const auto* d = datasets::find(key)) return {"embedded:" + key, *d};
  if (source.rfind("embedded:", 0) == 0) throw InputError("unknown embedded dataset '" + key + "'");
  std::ifstream in(source);
  if (!in) throw InputError("cannot open data file '" + source + "'");
  return {source, read_values(in, source)};
}

}  // namespace kwp::cli
