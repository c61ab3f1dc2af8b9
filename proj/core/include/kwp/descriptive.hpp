#pragma once

#include <cstddef>
#include <vector>

namespace kwp {

struct DescriptiveStats {
  std::size_t n = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double variance = 0.0;  // n - 1 divisor; 0 for a single value
};

/// Sample quantile with linear interpolation between order statistics at
/// h = (n - 1)p (Hyndman and Fan type 7).
double sample_quantile(const std::vector<double>& sorted, double p);

/// Throws InputError on an empty input.
DescriptiveStats describe(const std::vector<double>& values);

}  // namespace kwp
