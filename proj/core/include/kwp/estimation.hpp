#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kwp/params.hpp"
#include "kwp/sample.hpp"

namespace kwp {

/// How beta is fixed before the shape parameters are estimated.
///
/// The likelihood is maximized at beta = x_(1), but there z = 0 at the
/// minimum observation and the log-likelihood is -inf whenever a > 1.
///  - EpsRelative(eps): beta = x_(1) (1 - eps); the default, eps = 1e-3.
///  - HalfRound(delta): beta = x_(1) - delta, for data rounded to 2 delta.
///  - ExactMin: beta = x_(1); observations equal to x_(1) are left out of
///    the likelihood (they carry no information on the shapes once beta is
///    pinned there) and the remaining ones are fitted.
struct BetaRule {
  enum class Kind { EpsRelative, HalfRound, ExactMin };
  Kind kind = Kind::EpsRelative;
  double value = 1e-3;

  static BetaRule eps_relative(double eps = 1e-3);
  static BetaRule half_round(double delta);
  static BetaRule exact_min();

  /// Parses "eps-relative", "eps-relative:<eps>", "half-round:<delta>",
  /// "exact-min"; throws InputError otherwise.
  static BetaRule parse(const std::string& text);
  std::string to_string() const;

  /// beta for this sample; throws DomainError if it would not be positive.
  double apply(const Sample& s) const;
};

struct FitOptions {
  BetaRule beta_rule;
  /// Number of multi-start points; 0 uses the full deterministic grid
  /// (12 points for three shapes, 6 for EP).  Values above the grid size
  /// add log-uniform random starts drawn from seed.
  int starts = 0;
  std::uint64_t seed = 0;
  /// Also start from the fitted nested sub-model (Kw-P from EP, EP and BP
  /// from Pareto); guarantees loglik(Kw-P) >= loglik(EP) >= loglik(Pareto).
  bool nested_start = true;
  int max_iter = 500;
  double grad_tol = 1e-8;
  double step_tol = 1e-10;
  /// Shapes outside [1/boundary_ratio, boundary_ratio] are reported as a
  /// fit at the boundary of the parameter space.
  double boundary_ratio = 1e3;
  double condition_warning = 1e10;
};

struct StartSummary {
  std::vector<double> start;
  std::vector<double> estimate;
  double loglik = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string stop_reason;
};

struct FitResult {
  ModelKind kind = ModelKind::KwP;
  double beta_hat = 0.0;
  std::string beta_rule;
  /// Full parameter vector; shapes a sub-model does not use are 1.
  KwPParams params;
  std::vector<std::string> names;  // estimated parameters, e.g. {"k","a","b"}
  std::vector<double> estimates;
  std::vector<double> se;
  double loglik = 0.0;
  double minus2ll = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  double caic = 0.0;
  double ks = 0.0;
  std::size_t n = 0;       // observations in the sample
  std::size_t n_used = 0;  // observations in the likelihood
  bool converged = false;
  bool at_boundary = false;
  double condition_number = 0.0;
  std::vector<std::string> warnings;
  std::vector<StartSummary> optimizer_trace;
};

/// Shape parameters estimated for kind, in the order used by theta below.
std::vector<std::string> parameter_names(ModelKind kind);

/// Expand theta (size free_params(kind)) into a full parameter vector.
KwPParams params_from_theta(ModelKind kind, const std::vector<double>& theta, double beta);

/// Log-likelihood of the sub-model at theta.  Returns -inf if some
/// observation lies below beta or sits at beta where the density is zero;
/// throws DomainError for non-positive parameters.
double loglik(ModelKind kind, const std::vector<double>& theta, double beta, const Sample& s);

/// Analytic gradient of loglik with respect to theta.  Requires every
/// observation strictly above beta (throws DomainError otherwise).
std::vector<double> score(ModelKind kind, const std::vector<double>& theta, double beta, const Sample& s);

/// Observed information: the negative Hessian of loglik, row-major.
std::vector<std::vector<double>> observed_information(ModelKind kind, const std::vector<double>& theta,
                                                      double beta, const Sample& s);

/// Maximum-likelihood fit with beta fixed by opts.beta_rule.  Throws
/// InputError when n < p + 2 and ConvergenceError when no start yields a
/// finite optimum.
FitResult fit(ModelKind kind, const Sample& s, const FitOptions& opts = {});

}  // namespace kwp
