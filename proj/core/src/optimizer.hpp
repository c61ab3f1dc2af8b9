#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace kwp::detail {

struct BfgsOptions {
  int max_iter = 500;
  double grad_tol = 1e-8;   // max-norm of the gradient relative to 1 + |f|
  double step_tol = 1e-10;  // max-norm of the step relative to 1 + |x|
  double max_step = 10.0;   // cap on the max-norm of a trial step
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  Eigen::VectorXd grad;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string stop_reason;
};

/// Objective returning f(x) and writing its gradient; a non-finite value
/// marks x as infeasible and makes the line search back off.
using Objective = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

/// Quasi-Newton minimization with inverse-Hessian BFGS updates and a
/// strong-Wolfe line search.
BfgsResult minimize_bfgs(const Objective& fg, Eigen::VectorXd x0, const BfgsOptions& opts = {});

}  // namespace kwp::detail
