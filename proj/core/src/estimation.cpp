#include "kwp/estimation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "kwp/distribution.hpp"
#include "kwp/errors.hpp"
#include "kwp/model_selection.hpp"
#include "kwp/random.hpp"
#include "kwp/series.hpp"
#include "kwp/special_functions.hpp"
#include "optimizer.hpp"

namespace kwp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log1m_exp(double t) { return t > -0.693 ? std::log(-std::expm1(t)) : std::log1p(-std::exp(t)); }

// e^y - 1 - y, accurate for small |y|.
double expm1_minus_y(double y) {
  if (std::fabs(y) > 0.5) return std::expm1(y) - y;
  double term = y * y / 2.0;
  double sum = term;
  for (int n = 3; n < 40; ++n) {
    term *= y / n;
    sum += term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

// Sample reduced to what the likelihoods need: L_i = log(beta/x_i) <= 0.
struct Data {
  double n = 0.0;
  std::vector<double> L;
  double sum_L = 0.0;
  double sum_log_x = 0.0;
  bool below = false;     // some x_i < beta
  bool boundary = false;  // some x_i == beta
};

Data prepare(double beta, const std::vector<double>& values) {
  Data d;
  d.n = static_cast<double>(values.size());
  d.L.reserve(values.size());
  const double lb = std::log(beta);
  for (double x : values) {
    if (x < beta) d.below = true;
    if (x == beta) d.boundary = true;
    const double lx = std::log(x);
    d.L.push_back(lb - lx);
    d.sum_L += lb - lx;
    d.sum_log_x += lx;
  }
  return d;
}

std::size_t expected_size(ModelKind kind) { return static_cast<std::size_t>(free_params(kind)); }

void check_theta(ModelKind kind, const std::vector<double>& theta, double beta) {
  if (theta.size() != expected_size(kind)) {
    throw DomainError(std::string(model_label(kind)) + " expects " + std::to_string(expected_size(kind)) +
                      " shape parameters");
  }
  for (double t : theta) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("shape parameters must be positive and finite");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
}

// Shapes (k, a, b) of the Kw-P parameterization for any sub-model.
struct Shapes {
  double k, a, b;
};

Shapes shapes(ModelKind kind, const std::vector<double>& theta) {
  switch (kind) {
    case ModelKind::Pareto: return {theta[0], 1.0, 1.0};
    case ModelKind::EP: return {theta[0], theta[1], 1.0};
    default: return {theta[0], theta[1], theta[2]};
  }
}

double loglik_data(ModelKind kind, const std::vector<double>& theta, const Data& d) {
  if (d.below) return -kInf;
  const auto [k, a, b] = shapes(kind, theta);
  const double base = d.n * std::log(k) + k * d.sum_L - d.sum_log_x;
  if (kind == ModelKind::Pareto) return base;

  // An observation at beta has z = 0: its z^(a-1) factor decides the
  // likelihood and its 1 - z^a factor is 1.
  if (d.boundary && a != 1.0) return a > 1.0 ? -kInf : kInf;
  NeumaierSum slz;
  NeumaierSum sls;
  for (double L : d.L) {
    if (L == 0.0) continue;
    const double lz = log1m_exp(k * L);
    slz.add(lz);
    if (kind != ModelKind::BP && b != 1.0) sls.add(log1m_exp(a * lz));
  }
  const double shape_term = a != 1.0 ? (a - 1.0) * slz.value() : 0.0;
  if (kind == ModelKind::BP) {
    return base + shape_term + (b - 1.0) * k * d.sum_L - d.n * special::log_beta(a, b);
  }
  return base + d.n * std::log(a * b) + shape_term + (b - 1.0) * sls.value();
}

// Gradient and Hessian of the log-likelihood in the (k, a, b) coordinates
// of the sub-model.
struct Derivatives {
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

Derivatives derivatives(ModelKind kind, const std::vector<double>& theta, const Data& d, bool want_hessian) {
  if (d.below || d.boundary) {
    throw DomainError("score: every observation must lie strictly above beta");
  }
  const auto [k, a, b] = shapes(kind, theta);
  const std::size_t p = expected_size(kind);
  Derivatives out{Eigen::VectorXd::Zero(p), Eigen::MatrixXd::Zero(p, p)};
  const double n = d.n;

  if (kind == ModelKind::Pareto) {
    out.grad(0) = n / k + d.sum_L;
    out.hess(0, 0) = -n / (k * k);
    return out;
  }

  // Per-observation pieces: u = (beta/x)^k, z = 1 - u, s = 1 - z^a.
  NeumaierSum s_r1, s_r2, s_lz, s_A, s_B, s_C, s_D, s_E, s_ls;
  for (double L : d.L) {
    const double kl = k * L;
    const double u = std::exp(kl);
    const double lz = log1m_exp(kl);
    const double z = -std::expm1(kl);
    const double uL = u * L;
    s_r1.add(uL / z);
    s_lz.add(lz);
    if (want_hessian) s_r2.add(uL * L / (z * z));
    if (kind == ModelKind::BP) continue;
    const double za = std::exp(a * lz);
    const double s = -std::expm1(a * lz);
    const double A = za * uL / (z * s);  // z^{a-1} u L / s
    const double B = za * lz / s;        // z^a log z / s
    s_A.add(A);
    s_B.add(B);
    s_ls.add(log1m_exp(a * lz));
    if (want_hessian) {
      s_C.add(A * L - (uL * uL) * za / (z * z * s * s) * (a - 1.0 + za));
      s_D.add(-A * expm1_minus_y(a * lz) / s);  // 1 - z^a + a log z = -(e^y - 1 - y)
      s_E.add(B * lz / s);
    }
  }

  if (kind == ModelKind::BP) {
    const double psi_ab = special::digamma(a + b);
    out.grad(0) = n / k + b * d.sum_L - (a - 1.0) * s_r1.value();
    out.grad(1) = s_lz.value() - n * (special::digamma(a) - psi_ab);
    out.grad(2) = k * d.sum_L - n * (special::digamma(b) - psi_ab);
    if (want_hessian) {
      const double t_ab = special::trigamma(a + b);
      out.hess(0, 0) = -n / (k * k) - (a - 1.0) * s_r2.value();
      out.hess(0, 1) = -s_r1.value();
      out.hess(0, 2) = d.sum_L;
      out.hess(1, 1) = -n * (special::trigamma(a) - t_ab);
      out.hess(1, 2) = n * t_ab;
      out.hess(2, 2) = -n * (special::trigamma(b) - t_ab);
    }
  } else {
    out.grad(0) = n / k + d.sum_L - (a - 1.0) * s_r1.value() + a * (b - 1.0) * s_A.value();
    out.grad(1) = n / a + s_lz.value() - (b - 1.0) * s_B.value();
    if (p == 3) out.grad(2) = n / b + s_ls.value();
    if (want_hessian) {
      out.hess(0, 0) = -n / (k * k) - (a - 1.0) * s_r2.value() + a * (b - 1.0) * s_C.value();
      out.hess(0, 1) = -s_r1.value() + (b - 1.0) * s_D.value();
      out.hess(1, 1) = -n / (a * a) - (b - 1.0) * s_E.value();
      if (p == 3) {
        out.hess(0, 2) = a * s_A.value();
        out.hess(1, 2) = -s_B.value();
        out.hess(2, 2) = -n / (b * b);
      }
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < i; ++j) out.hess(i, j) = out.hess(j, i);
  }
  return out;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<std::vector<double>> grid_starts(ModelKind kind) {
  std::vector<std::vector<double>> out;
  for (double k : {0.05, 0.5, 2.0}) {
    if (kind == ModelKind::Pareto) {
      out.push_back({k});
      continue;
    }
    for (double a : {0.5, 3.0}) {
      if (kind == ModelKind::EP) {
        out.push_back({k, a});
        continue;
      }
      for (double b : {1.0, 50.0}) out.push_back({k, a, b});
    }
  }
  return out;
}

// Shortest text that parses back to v.
std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

BetaRule BetaRule::eps_relative(double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw InputError("eps-relative: eps must lie in [0, 1)");
  return {Kind::EpsRelative, eps};
}

BetaRule BetaRule::half_round(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("half-round: delta must be positive");
  return {Kind::HalfRound, delta};
}

BetaRule BetaRule::exact_min() { return {Kind::ExactMin, 0.0}; }

BetaRule BetaRule::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  double arg = 0.0;
  if (has_arg) {
    const std::string rest = text.substr(colon + 1);
    try {
      std::size_t used = 0;
      arg = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::exception&) {
      throw InputError("beta rule '" + text + "': argument is not a number");
    }
  }
  if (head == "eps-relative") return has_arg ? eps_relative(arg) : eps_relative();
  if (head == "half-round") {
    if (!has_arg) throw InputError("half-round needs a delta, e.g. half-round:0.05");
    return half_round(arg);
  }
  if (head == "exact-min" && !has_arg) return exact_min();
  throw InputError("unknown beta rule '" + text + "' (expected eps-relative[:eps], half-round:<delta>, exact-min)");
}

std::string BetaRule::to_string() const {
  switch (kind) {
    case Kind::EpsRelative: return "eps-relative:" + shortest(value);
    case Kind::HalfRound: return "half-round:" + shortest(value);
    case Kind::ExactMin: return "exact-min";
  }
  return "";
}

double BetaRule::apply(const Sample& s) const {
  double beta = s.min_value();
  if (kind == Kind::EpsRelative) beta *= 1.0 - value;
  if (kind == Kind::HalfRound) beta -= value;
  if (!(beta > 0.0)) throw DomainError("beta rule " + to_string() + " gives a non-positive beta");
  return beta;
}

std::vector<std::string> parameter_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::Pareto: return {"k"};
    case ModelKind::EP: return {"k", "a"};
    default: return {"k", "a", "b"};
  }
}

KwPParams params_from_theta(ModelKind kind, const std::vector<double>& theta, double beta) {
  check_theta(kind, theta, beta);
  const Shapes sh = shapes(kind, theta);
  return {beta, sh.k, sh.a, sh.b};
}

double loglik(ModelKind kind, const std::vector<double>& theta, double beta, const Sample& s) {
  check_theta(kind, theta, beta);
  return loglik_data(kind, theta, prepare(beta, s.values()));
}

std::vector<double> score(ModelKind kind, const std::vector<double>& theta, double beta, const Sample& s) {
  check_theta(kind, theta, beta);
  return to_std(derivatives(kind, theta, prepare(beta, s.values()), false).grad);
}

std::vector<std::vector<double>> observed_information(ModelKind kind, const std::vector<double>& theta,
                                                      double beta, const Sample& s) {
  check_theta(kind, theta, beta);
  const Eigen::MatrixXd h = derivatives(kind, theta, prepare(beta, s.values()), true).hess;
  std::vector<std::vector<double>> out(h.rows(), std::vector<double>(h.cols()));
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.cols(); ++j) out[i][j] = -h(i, j);
  }
  return out;
}

FitResult fit(ModelKind kind, const Sample& s, const FitOptions& opts) {
  const int p = free_params(kind);
  FitResult res;
  res.kind = kind;
  res.beta_rule = opts.beta_rule.to_string();
  res.names = parameter_names(kind);
  res.n = s.size();
  res.beta_hat = opts.beta_rule.apply(s);

  std::vector<double> used;
  used.reserve(s.size());
  for (double x : s.values()) {
    if (opts.beta_rule.kind != BetaRule::Kind::ExactMin || x > res.beta_hat) used.push_back(x);
  }
  res.n_used = used.size();
  if (res.n_used < static_cast<std::size_t>(p + 2)) {
    throw InputError(std::string(model_label(kind)) + " fit needs at least " + std::to_string(p + 2) +
                     " usable observations, got " + std::to_string(res.n_used));
  }
  const Data d = prepare(res.beta_hat, used);

  std::vector<double> theta;
  if (kind == ModelKind::Pareto) {
    theta = {d.n / -d.sum_L};
    res.converged = true;
    res.optimizer_trace.push_back({theta, theta, loglik_data(kind, theta, d), 0, 1, true, "closed form"});
  } else {
    std::vector<std::vector<double>> starts = grid_starts(kind);
    const std::size_t grid = starts.size();
    if (opts.starts > 0) {
      const std::size_t want = static_cast<std::size_t>(opts.starts);
      if (want < grid) starts.resize(want);
      Xoshiro256 gen(opts.seed);
      for (std::size_t i = grid; i < want; ++i) {
        std::vector<double> st;
        st.push_back(std::exp(std::log(0.01) + gen.uniform_open() * std::log(1000.0)));
        for (int j = 1; j < p; ++j) st.push_back(std::exp(std::log(0.1) + gen.uniform_open() * std::log(1000.0)));
        starts.push_back(st);
      }
    }
    if (opts.nested_start) {
      FitOptions sub = opts;
      const ModelKind nested = kind == ModelKind::KwP ? ModelKind::EP : ModelKind::Pareto;
      const FitResult inner = fit(nested, s, sub);
      std::vector<double> st = inner.estimates;
      while (st.size() < static_cast<std::size_t>(p)) st.push_back(1.0);
      starts.push_back(st);
    }

    detail::BfgsOptions bo;
    bo.max_iter = opts.max_iter;
    bo.grad_tol = opts.grad_tol;
    bo.step_tol = opts.step_tol;
    const detail::Objective objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
      std::vector<double> th(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) th[i] = std::exp(x(i));
      for (double t : th) {
        if (!(t > 0.0) || !std::isfinite(t)) return kInf;
      }
      const double ll = loglik_data(kind, th, d);
      if (!std::isfinite(ll)) return kInf;
      const Eigen::VectorXd gr = derivatives(kind, th, d, false).grad;
      for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = -th[i] * gr(i);
      return -ll;
    };

    int best = -1;
    std::vector<double> best_theta;
    for (const auto& st : starts) {
      Eigen::VectorXd x0(p);
      for (int i = 0; i < p; ++i) x0(i) = std::log(st[i]);
      StartSummary sum;
      sum.start = st;
      try {
        const detail::BfgsResult r = detail::minimize_bfgs(objective, x0, bo);
        for (Eigen::Index i = 0; i < r.x.size(); ++i) sum.estimate.push_back(std::exp(r.x(i)));
        sum.loglik = std::isfinite(r.f) ? -r.f : -kInf;
        sum.iterations = r.iterations;
        sum.evaluations = r.evaluations;
        sum.converged = r.converged;
        sum.stop_reason = r.stop_reason;
      } catch (const Error& e) {
        sum.loglik = -kInf;
        sum.stop_reason = e.what();
      }
      res.optimizer_trace.push_back(sum);
      const int idx = static_cast<int>(res.optimizer_trace.size()) - 1;
      if (std::isfinite(sum.loglik) &&
          (best < 0 || sum.loglik > res.optimizer_trace[best].loglik)) {
        best = idx;
      }
    }
    if (best < 0) {
      throw ConvergenceError(std::string(model_label(kind)) + " fit: no start reached a finite log-likelihood");
    }
    theta = res.optimizer_trace[best].estimate;
    res.converged = res.optimizer_trace[best].converged;
    if (!res.converged) {
      res.warnings.push_back("best start stopped without meeting the convergence criteria (" +
                             res.optimizer_trace[best].stop_reason + ")");
    }
  }

  res.estimates = theta;
  res.params = params_from_theta(kind, theta, res.beta_hat);
  res.loglik = loglik_data(kind, theta, d);
  res.minus2ll = -2.0 * res.loglik;
  const InformationCriteria ic = information_criteria(res.loglik, p, res.n_used);
  res.aic = ic.aic;
  res.bic = ic.bic;
  res.caic = ic.caic;
  const KwPParams fitted = res.params;
  res.ks = ks_statistic(s, [&](double x) { return submodel_cdf(kind, x, fitted); });

  const Eigen::MatrixXd info = -derivatives(kind, theta, d, true).hess;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().cwiseAbs().maxCoeff();
  res.se.assign(p, std::numeric_limits<double>::quiet_NaN());
  if (lmin > 0.0) {
    res.condition_number = lmax / lmin;
    const Eigen::MatrixXd cov = info.inverse();
    for (int i = 0; i < p; ++i) res.se[i] = std::sqrt(cov(i, i));
  } else {
    res.condition_number = kInf;
    res.warnings.push_back("observed information is not positive definite; standard errors unavailable");
  }
  if (res.condition_number > opts.condition_warning && std::isfinite(res.condition_number)) {
    char cond[32];
    std::snprintf(cond, sizeof cond, "%.3g", res.condition_number);
    res.warnings.push_back(std::string("observed information is ill-conditioned (condition number ") + cond +
                           "); standard errors are unreliable");
  }
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] > opts.boundary_ratio || theta[i] < 1.0 / opts.boundary_ratio) res.at_boundary = true;
  }
  if (res.at_boundary) {
    res.warnings.push_back("estimate lies at the edge of the parameter space; the likelihood keeps rising "
                           "toward a limiting family there");
  }
  return res;
}

}  // namespace kwp
