#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "kwp/distribution.hpp"
#include "kwp/estimation.hpp"

namespace kwp::fdcheck {

// Richardson-extrapolated central difference of the i-th partial of f.
inline double central_partial(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x,
                              std::size_t i) {
  const double h = 1e-3 * std::max(std::fabs(x[i]), 1e-2);
  auto d = [&](double step) {
    std::vector<double> up = x, dn = x;
    up[i] += step;
    dn[i] -= step;
    return (f(up) - f(dn)) / (2.0 * step);
  };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

struct DerivativeCase {
  ModelKind kind;
  std::vector<double> theta;
  double beta;
  Sample sample;
};

/// Random parameter point and a sample strictly above beta.  Shapes are
/// log-uniform on [0.3, 5]; data come from a Kw-P with unrelated shapes so
/// that the point is not an optimum.
inline DerivativeCase random_case(ModelKind kind, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lu(std::log(0.3), std::log(5.0));
  std::uniform_int_distribution<int> sizes(20, 80);
  const KwPParams gen{1.0, std::exp(lu(rng)), std::exp(lu(rng)), std::exp(lu(rng))};
  const Sample s = kwp_sample(static_cast<std::size_t>(sizes(rng)), gen, rng());
  const double beta = 0.9 * s.min_value();
  std::vector<double> theta(static_cast<std::size_t>(free_params(kind)));
  for (auto& t : theta) t = std::exp(lu(rng));
  return {kind, theta, beta, s};
}

/// max_i |analytic_i - fd_i| / max(|analytic_i|, 1)
inline double score_error(const DerivativeCase& c) {
  const auto g = score(c.kind, c.theta, c.beta, c.sample);
  auto f = [&](const std::vector<double>& t) { return loglik(c.kind, t, c.beta, c.sample); };
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double fd = central_partial(f, c.theta, i);
    worst = std::max(worst, std::fabs(g[i] - fd) / std::max(std::fabs(g[i]), 1.0));
  }
  return worst;
}

/// Observed information against minus the finite-difference Jacobian of the
/// analytic score; error relative to max(|J_ij|, 1).
inline double information_error(const DerivativeCase& c) {
  const auto J = observed_information(c.kind, c.theta, c.beta, c.sample);
  double worst = 0.0;
  for (std::size_t j = 0; j < c.theta.size(); ++j) {
    for (std::size_t i = 0; i < c.theta.size(); ++i) {
      auto gi = [&](const std::vector<double>& t) { return score(c.kind, t, c.beta, c.sample)[i]; };
      const double fd = -central_partial(gi, c.theta, j);
      worst = std::max(worst, std::fabs(J[i][j] - fd) / std::max(std::fabs(J[i][j]), 1.0));
    }
  }
  return worst;
}

}  // namespace kwp::fdcheck
