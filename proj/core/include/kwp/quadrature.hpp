#pragma once

#include <functional>

namespace kwp {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // difference between the last two refinement levels
  int levels = 0;
  bool converged = false;
};

/// Tanh-sinh integration of f over (0, 1).
///
/// The integrand is called as f(v, 1 - v) with both arguments computed
/// directly from the abscissa, so integrands that need the complement near
/// v = 1 (quantile-based expectations) keep full relative precision there.
/// Endpoint singularities of algebraic type are handled without special
/// treatment.
QuadratureResult integrate_unit_interval(const std::function<double(double, double)>& f,
                                         double rel_tol = 1e-13, int max_level = 12);

}  // namespace kwp
