#include "kwp/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kwp/errors.hpp"

namespace kwp {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v) || v <= 0.0) {
      throw InputError("observation " + std::to_string(i + 1) + " is not a positive finite number");
    }
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
  min_ = sorted_.front();
}

Sample Sample::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("Sample::scaled: factor must be positive");
  std::vector<double> v = values_;
  for (auto& x : v) x *= c;
  return Sample(std::move(v));
}

}  // namespace kwp
