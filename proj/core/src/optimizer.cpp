#include "optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kwp::detail {

namespace {

constexpr double kC1 = 1e-4;
constexpr double kC2 = 0.9;

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  double d = 0.0;  // directional derivative
  Eigen::VectorXd x;
  Eigen::VectorXd g;
};

class LineSearch {
 public:
  LineSearch(const Objective& fg, const Eigen::VectorXd& x, const Eigen::VectorXd& p, double f0, double d0, int& evals)
      : fg_(fg), x_(x), p_(p), f0_(f0), d0_(d0), evals_(evals) {}

  Point eval(double alpha) {
    Point pt;
    pt.alpha = alpha;
    pt.x = x_ + alpha * p_;
    pt.g.resize(x_.size());
    pt.f = fg_(pt.x, pt.g);
    ++evals_;
    if (!std::isfinite(pt.f) || !pt.g.allFinite()) {
      pt.f = std::numeric_limits<double>::infinity();
      pt.d = std::numeric_limits<double>::quiet_NaN();
    } else {
      pt.d = pt.g.dot(p_);
    }
    return pt;
  }

  bool sufficient(const Point& pt) const { return pt.f <= f0_ + kC1 * pt.alpha * d0_; }
  bool curvature(const Point& pt) const { return std::fabs(pt.d) <= -kC2 * d0_; }

  // Nocedal and Wright, Algorithm 3.5.
  bool run(double alpha, double alpha_max, Point& out) {
    Point prev;
    prev.alpha = 0.0;
    prev.f = f0_;
    prev.d = d0_;
    for (int i = 0; i < 40; ++i) {
      Point cur = eval(alpha);
      if (!sufficient(cur) || (i > 0 && cur.f >= prev.f)) return zoom(prev, cur, out);
      if (curvature(cur)) {
        out = cur;
        return true;
      }
      if (cur.d >= 0.0) return zoom(cur, prev, out);
      prev = cur;
      if (alpha >= alpha_max) {
        out = cur;
        return true;
      }
      alpha = std::min(2.0 * alpha, alpha_max);
    }
    return false;
  }

 private:
  bool zoom(Point lo, Point hi, Point& out) {
    for (int i = 0; i < 60; ++i) {
      double trial;
      const double width = hi.alpha - lo.alpha;
      if (std::isfinite(hi.f) && std::isfinite(lo.d)) {
        // Minimizer of the quadratic through f(lo), f'(lo), f(hi).
        const double denom = 2.0 * (hi.f - lo.f - lo.d * width);
        trial = denom > 0.0 ? lo.alpha - lo.d * width * width / denom : lo.alpha + 0.5 * width;
        const double a = std::min(lo.alpha, hi.alpha);
        const double b = std::max(lo.alpha, hi.alpha);
        const double margin = 0.1 * (b - a);
        if (!(trial > a + margin && trial < b - margin)) trial = lo.alpha + 0.5 * width;
      } else {
        trial = lo.alpha + 0.5 * width;
      }
      if (std::fabs(trial - lo.alpha) <= 1e-16 * std::max(1.0, std::fabs(lo.alpha))) break;
      Point cur = eval(trial);
      if (!sufficient(cur) || cur.f >= lo.f) {
        hi = cur;
      } else {
        if (curvature(cur)) {
          out = cur;
          return true;
        }
        if (cur.d * width >= 0.0) hi = lo;
        lo = cur;
      }
    }
    // No Wolfe point, but a strict decrease is still progress.
    if (lo.alpha > 0.0 && lo.f < f0_) {
      out = lo;
      return true;
    }
    return false;
  }

  const Objective& fg_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& p_;
  double f0_;
  double d0_;
  int& evals_;
};

}  // namespace

BfgsResult minimize_bfgs(const Objective& fg, Eigen::VectorXd x0, const BfgsOptions& opts) {
  const Eigen::Index dim = x0.size();
  BfgsResult res;
  res.x = std::move(x0);
  res.grad.resize(dim);
  res.f = fg(res.x, res.grad);
  res.evaluations = 1;
  if (!std::isfinite(res.f) || !res.grad.allFinite()) {
    res.stop_reason = "objective not finite at the starting point";
    return res;
  }

  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(dim, dim);
  bool scaled = false;
  bool reset_once = false;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (res.grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol * (1.0 + std::fabs(res.f))) {
      res.converged = true;
      res.stop_reason = "gradient tolerance";
      return res;
    }
    Eigen::VectorXd p = -H * res.grad;
    double d0 = p.dot(res.grad);
    if (!(d0 < 0.0)) {
      H.setIdentity();
      p = -res.grad;
      d0 = p.dot(res.grad);
    }
    const double pmax = p.lpNorm<Eigen::Infinity>();
    const double alpha_max = opts.max_step / pmax;
    double alpha0 = std::min(1.0, alpha_max);
    if (!scaled) alpha0 = std::min(alpha0, 1.0 / std::max(1.0, res.grad.lpNorm<Eigen::Infinity>()));

    Point next;
    LineSearch ls(fg, res.x, p, res.f, d0, res.evaluations);
    if (!ls.run(alpha0, alpha_max, next)) {
      if (!reset_once) {
        reset_once = true;
        H.setIdentity();
        scaled = false;
        continue;
      }
      res.iterations = iter;
      // A failed search whose predicted decrease is below the rounding
      // level of f has reached the optimum to working precision; along a
      // flat ridge this is the only way the iteration can end.
      if (-d0 <= 1e-12 * (1.0 + std::fabs(res.f))) {
        res.converged = true;
        res.stop_reason = "no decrease possible at working precision";
      } else {
        res.stop_reason = "line search failed";
      }
      return res;
    }
    reset_once = false;
    const Eigen::VectorXd s = next.x - res.x;
    const Eigen::VectorXd y = next.g - res.grad;
    const double step_norm = s.lpNorm<Eigen::Infinity>();
    const double x_norm = res.x.lpNorm<Eigen::Infinity>();
    res.x = next.x;
    res.f = next.f;
    res.grad = next.g;
    res.iterations = iter + 1;
    if (step_norm <= opts.step_tol * (1.0 + x_norm)) {
      res.converged = true;
      res.stop_reason = "step tolerance";
      return res;
    }
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        H *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::VectorXd Hy = H * y;
      const double yHy = y.dot(Hy);
      H += rho * rho * (sy + yHy) * (s * s.transpose()) - rho * (Hy * s.transpose() + s * Hy.transpose());
    }
  }
  res.stop_reason = "iteration limit";
  if (res.grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol * (1.0 + std::fabs(res.f))) {
    res.converged = true;
    res.stop_reason = "gradient tolerance";
  }
  return res;
}

}  // namespace kwp::detail
