#pragma once

#include <cstddef>
#include <vector>

namespace kwp {

/// Non-empty univariate dataset of finite, strictly positive observations.
class Sample {
 public:
  /// Throws InputError if values is empty or holds a non-positive or
  /// non-finite entry.
  explicit Sample(std::vector<double> values);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double min_value() const noexcept { return min_; }

  /// Values in ascending order (computed on construction).
  const std::vector<double>& sorted() const noexcept { return sorted_; }

  /// Copy with every value multiplied by c > 0.
  Sample scaled(double c) const;

 private:
  std::vector<double> values_;
  std::vector<double> sorted_;
  double min_;
};

}  // namespace kwp
