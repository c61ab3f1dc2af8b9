#include "kwp/descriptive.hpp"

#include <algorithm>
#include <cmath>

#include "kwp/errors.hpp"
#include "kwp/series.hpp"

namespace kwp {

double sample_quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw InputError("sample_quantile: empty input");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sample_quantile: p must lie in [0, 1]");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

DescriptiveStats describe(const std::vector<double>& values) {
  if (values.empty()) throw InputError("describe: no observations");
  std::vector<double> x = values;
  std::sort(x.begin(), x.end());
  DescriptiveStats st;
  st.n = x.size();
  st.min = x.front();
  st.max = x.back();
  st.q1 = sample_quantile(x, 0.25);
  st.median = sample_quantile(x, 0.5);
  st.q3 = sample_quantile(x, 0.75);
  NeumaierSum sum;
  for (double v : x) sum.add(v);
  st.mean = sum.value() / static_cast<double>(st.n);
  if (st.n > 1) {
    NeumaierSum ss;
    for (double v : x) ss.add((v - st.mean) * (v - st.mean));
    st.variance = ss.value() / static_cast<double>(st.n - 1);
  }
  return st;
}

}  // namespace kwp
