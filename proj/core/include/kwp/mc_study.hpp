#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kwp/estimation.hpp"
#include "kwp/params.hpp"

namespace kwp {

struct StudyConfig {
  KwPParams truth{1.5, 1.0, 0.5, 2.5};
  std::vector<std::size_t> sample_sizes{30, 50, 100};
  std::size_t replications = 1000;
  std::uint64_t seed = 1;
  /// Defaults to exact-min: beta = x_(1) with the minimum left out of the
  /// likelihood.  A fixed relative offset below x_(1) is not consistent.
  BetaRule beta_rule = BetaRule::exact_min();
  FitOptions fit;    // beta_rule above overrides fit.beta_rule
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

enum class ReplicationStatus { Used, NotConverged, Boundary, Failed };

const char* to_string(ReplicationStatus s) noexcept;

struct ReplicationRecord {
  std::size_t n = 0;
  std::size_t index = 0;
  ReplicationStatus status = ReplicationStatus::Failed;
  KwPParams estimate{};  // meaningless when status is Failed
  double loglik = 0.0;
};

struct ParameterSummary {
  std::string name;
  double true_value = 0.0;
  double mean = 0.0;
  double bias = 0.0;  // mean - true
  double sd = 0.0;
};

/// Aggregates over replications with status Used; the other counts say how
/// many were dropped and why.
struct SizeSummary {
  std::size_t n = 0;
  std::size_t replications = 0;
  std::size_t used = 0;
  std::size_t not_converged = 0;
  std::size_t boundary = 0;
  std::size_t failed = 0;
  std::array<ParameterSummary, 4> params;  // beta, k, a, b
  double min_beta_hat = 0.0;               // over all non-failed replications
};

struct StudyResult {
  StudyConfig config;
  std::vector<SizeSummary> sizes;
  std::vector<ReplicationRecord> records;  // ordered by (n, index)
};

/// Deterministic in cfg: replication r at size n draws from the stream
/// Xoshiro256::stream(seed, n, r), so thread count does not change any bit.
StudyResult run_study(const StudyConfig& cfg);

/// One row per (n, parameter); 17 significant digits.
std::string study_csv(const StudyResult& r);
std::string study_text(const StudyResult& r);

}  // namespace kwp
