#include "kwp/model_selection.hpp"

#include <algorithm>
#include <cmath>

#include "kwp/errors.hpp"

namespace kwp {

InformationCriteria information_criteria(double loglik, int p, std::size_t n) {
  if (p < 0) throw DomainError("information_criteria: parameter count must be non-negative");
  const double nd = static_cast<double>(n);
  if (!(nd > p + 1.0)) {
    throw DomainError("information_criteria: corrected AIC needs n > p + 1 (n=" + std::to_string(n) +
                      ", p=" + std::to_string(p) + ")");
  }
  InformationCriteria ic;
  const double m2 = -2.0 * loglik;
  ic.aic = m2 + 2.0 * p;
  ic.bic = m2 + p * std::log(nd);
  ic.caic = ic.aic + 2.0 * p * (p + 1.0) / (nd - p - 1.0);
  return ic;
}

double ks_statistic(const Sample& s, const std::function<double(double)>& cdf) {
  const auto& x = s.sorted();
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double f = cdf(x[i]);
    d = std::max({d, static_cast<double>(j) / n - f, f - static_cast<double>(i) / n});
    i = j;
  }
  return std::clamp(d, 0.0, 1.0);
}

ComparisonReport compare(const Sample& s, const std::vector<ModelKind>& kinds, const FitOptions& opts,
                         std::string dataset_id) {
  if (kinds.empty()) throw InputError("compare: no models requested");
  ComparisonReport report;
  report.dataset_id = std::move(dataset_id);
  report.beta_rule = opts.beta_rule.to_string();
  for (ModelKind kind : kinds) {
    ComparisonRow row;
    row.kind = kind;
    try {
      row.fit = fit(kind, s, opts);
      for (const auto& w : row.fit->warnings) report.notes.push_back(std::string(model_label(kind)) + ": " + w);
    } catch (const Error& e) {
      row.error = e.what();
      report.notes.push_back(std::string(model_label(kind)) + ": fit failed: " + e.what());
    }
    report.rows.push_back(std::move(row));
  }
  std::stable_sort(report.rows.begin(), report.rows.end(), [](const ComparisonRow& l, const ComparisonRow& r) {
    if (l.fit && r.fit) return l.fit->aic < r.fit->aic;
    return l.fit.has_value() && !r.fit.has_value();
  });
  return report;
}

}  // namespace kwp
