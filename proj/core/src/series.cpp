#include "kwp/series.hpp"

#include "kwp/errors.hpp"

namespace kwp {

void SeriesControl::validate() const {
  if (max_terms == 0) throw DomainError("SeriesControl: max_terms must be positive");
  if (!(rel_tol > 0.0)) throw DomainError("SeriesControl: rel_tol must be positive");
  if (stall_window == 0) throw DomainError("SeriesControl: stall_window must be positive");
}

bool SeriesAccumulator::add(double term) noexcept {
  sum_.add(term);
  ++terms_;
  const double total = std::fabs(sum_.value());
  // Leading zero terms say nothing about convergence.
  if (total > 0.0 && std::fabs(term) <= ctrl_.rel_tol * total) {
    if (++small_run_ >= ctrl_.stall_window) converged_ = true;
  } else {
    small_run_ = 0;
  }
  return done();
}

}  // namespace kwp
