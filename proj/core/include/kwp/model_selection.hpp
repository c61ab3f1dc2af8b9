#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kwp/estimation.hpp"
#include "kwp/params.hpp"
#include "kwp/sample.hpp"

namespace kwp {

struct InformationCriteria {
  double aic = 0.0;
  double bic = 0.0;
  double caic = 0.0;  // corrected AIC: aic + 2p(p+1)/(n-p-1)
};

/// Throws DomainError when n <= p + 1 (corrected AIC undefined).
InformationCriteria information_criteria(double loglik, int p, std::size_t n);

/// Kolmogorov-Smirnov distance between the empirical cdf of s and cdf.
/// Tied observations are handled by evaluating cdf once per distinct value
/// against the step heights on both sides of the jump.
double ks_statistic(const Sample& s, const std::function<double(double)>& cdf);

struct ComparisonRow {
  ModelKind kind = ModelKind::KwP;
  std::optional<FitResult> fit;  // empty when the fit threw
  std::string error;
};

struct ComparisonReport {
  std::string dataset_id;
  std::string beta_rule;
  std::vector<ComparisonRow> rows;  // successful fits by ascending AIC, then failures
  std::vector<std::string> notes;
};

/// Fits every kind on s with the same options; per-model failures are
/// recorded in their row and do not abort the report.
ComparisonReport compare(const Sample& s, const std::vector<ModelKind>& kinds, const FitOptions& opts = {},
                         std::string dataset_id = {});

}  // namespace kwp
