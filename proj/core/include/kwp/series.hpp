#pragma once

#include <cmath>
#include <cstddef>

namespace kwp {

/// Truncation policy shared by every infinite series in the library.
///
/// A series stops at the first of: max_terms terms consumed, or stall_window
/// consecutive terms each no larger than rel_tol times the partial sum.
struct SeriesControl {
  std::size_t max_terms = 10000;
  double rel_tol = 1e-12;
  std::size_t stall_window = 20;

  void validate() const;
};

/// Compensated (Neumaier) summation.
class NeumaierSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Outcome of a truncated series evaluation.
struct SeriesResult {
  double value = 0.0;
  std::size_t terms = 0;
  bool converged = false;
};

/// Accumulates terms under a SeriesControl and decides when to stop.
class SeriesAccumulator {
 public:
  explicit SeriesAccumulator(const SeriesControl& ctrl) : ctrl_(ctrl) {}

  /// Adds one term; returns true once the series should stop.
  bool add(double term) noexcept;

  bool done() const noexcept { return converged_ || terms_ >= ctrl_.max_terms; }
  bool converged() const noexcept { return converged_; }
  std::size_t terms() const noexcept { return terms_; }
  double value() const noexcept { return sum_.value(); }
  SeriesResult result() const noexcept { return {value(), terms_, converged_}; }

 private:
  SeriesControl ctrl_;
  NeumaierSum sum_;
  std::size_t terms_ = 0;
  std::size_t small_run_ = 0;
  bool converged_ = false;
};

}  // namespace kwp
