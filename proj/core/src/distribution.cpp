#include "kwp/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kwp/errors.hpp"
#include "kwp/special_functions.hpp"

namespace kwp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 - e^t) for t < 0, accurate on both ends.
double log1m_exp(double t) { return t > -0.693 ? std::log(-std::expm1(t)) : std::log1p(-std::exp(t)); }

// Pieces shared by the Kw-P functions at an interior point x > beta.
struct Terms {
  double log_u;  // k log(beta/x)
  double log_z;  // log(1 - u)
  double log_s;  // log(1 - z^a)
};

Terms terms(double x, const KwPParams& p) {
  Terms t{};
  t.log_u = p.k * std::log(p.beta / x);
  t.log_z = log1m_exp(t.log_u);
  t.log_s = log1m_exp(p.a * t.log_z);
  return t;
}

void check_pareto(double beta, double k) {
  if (!(beta > 0.0) || !(k > 0.0) || !std::isfinite(beta) || !std::isfinite(k)) {
    throw DomainError("Pareto parameters must be positive and finite");
  }
}

double positive_or_throw(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
  return v;
}

}  // namespace

double pareto_cdf(double x, double beta, double k) {
  check_pareto(beta, k);
  if (!(x > beta)) return 0.0;
  return -std::expm1(k * std::log(beta / x));
}

double pareto_pdf(double x, double beta, double k) {
  check_pareto(beta, k);
  if (x < beta || std::isinf(x)) return 0.0;
  return k / x * std::exp(k * std::log(beta / x));
}

double kwp_cdf(double x, const KwPParams& p) {
  p.validate();
  if (!(x > p.beta)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return -std::expm1(p.b * terms(x, p).log_s);
}

double kwp_sf(double x, const KwPParams& p) {
  p.validate();
  if (!(x > p.beta)) return 1.0;
  if (std::isinf(x)) return 0.0;
  return std::exp(p.b * terms(x, p).log_s);
}

double kwp_log_pdf(double x, const KwPParams& p) {
  p.validate();
  if (x < p.beta || std::isinf(x)) return -kInf;
  if (x == p.beta) return std::log(kwp_pdf_limit_at_beta(p));
  const Terms t = terms(x, p);
  return std::log(p.a * p.b * p.k) - std::log(x) + t.log_u + (p.a - 1.0) * t.log_z + (p.b - 1.0) * t.log_s;
}

double kwp_pdf(double x, const KwPParams& p) {
  p.validate();
  if (x == p.beta) return kwp_pdf_limit_at_beta(p);
  return std::exp(kwp_log_pdf(x, p));
}

double kwp_hazard(double x, const KwPParams& p) {
  p.validate();
  if (x < p.beta || std::isinf(x)) return 0.0;
  if (x == p.beta) return kwp_hazard_limit_at_beta(p);
  const Terms t = terms(x, p);
  return std::exp(std::log(p.a * p.b * p.k) - std::log(x) + t.log_u + (p.a - 1.0) * t.log_z - t.log_s);
}

double kwp_pdf_limit_at_beta(const KwPParams& p) {
  p.validate();
  if (p.a < 1.0) return kInf;
  if (p.a == 1.0) return p.b * p.k / p.beta;
  return 0.0;
}

double kwp_hazard_limit_at_beta(const KwPParams& p) { return kwp_pdf_limit_at_beta(p); }

namespace {

// Quantile from log(1 - u).
double quantile_from_log_upper(double log_q, const KwPParams& p) {
  if (log_q == 0.0) return p.beta;
  const double log_v = log1m_exp(log_q / p.b);  // log z^a
  const double log_y = log1m_exp(log_v / p.a);  // log (beta/x)^k
  return p.beta * std::exp(-log_y / p.k);
}

}  // namespace

double kwp_quantile(double u, const KwPParams& p) {
  p.validate();
  if (!(u >= 0.0 && u < 1.0)) throw DomainError("kwp_quantile: probability must lie in [0, 1)");
  return quantile_from_log_upper(std::log1p(-u), p);
}

double kwp_quantile_upper(double q, const KwPParams& p) {
  p.validate();
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("kwp_quantile_upper: tail probability must lie in (0, 1]");
  return quantile_from_log_upper(std::log(q), p);
}

std::vector<double> kwp_draw(std::size_t n, const KwPParams& p, Xoshiro256& gen) {
  p.validate();
  std::vector<double> out(n);
  // 1 - U is uniform as well; feeding U as the tail probability keeps the
  // heavy upper tail at full resolution.
  for (auto& x : out) x = quantile_from_log_upper(std::log(gen.uniform_open()), p);
  return out;
}

Sample kwp_sample(std::size_t n, const KwPParams& p, std::uint64_t seed) {
  if (n == 0) throw DomainError("kwp_sample: n must be at least 1");
  Xoshiro256 gen(seed);
  return Sample(kwp_draw(n, p, gen));
}

double ep_cdf(double x, double beta, double k, double a) {
  check_pareto(beta, k);
  positive_or_throw(a, "EP shape a");
  if (!(x > beta)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return std::exp(a * log1m_exp(k * std::log(beta / x)));
}

double ep_pdf(double x, double beta, double k, double a) {
  check_pareto(beta, k);
  positive_or_throw(a, "EP shape a");
  if (x < beta || std::isinf(x)) return 0.0;
  if (x == beta) return a < 1.0 ? kInf : (a == 1.0 ? k / beta : 0.0);
  const double log_u = k * std::log(beta / x);
  return std::exp(std::log(a * k) - std::log(x) + log_u + (a - 1.0) * log1m_exp(log_u));
}

double bp_cdf(double x, double beta, double k, double a, double b) {
  check_pareto(beta, k);
  positive_or_throw(a, "BP shape a");
  positive_or_throw(b, "BP shape b");
  if (!(x > beta)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double log_u = k * std::log(beta / x);
  const double u = std::exp(log_u);
  return special::regularized_incomplete_beta(a, b, -std::expm1(log_u), u);
}

double bp_pdf(double x, double beta, double k, double a, double b) {
  check_pareto(beta, k);
  positive_or_throw(a, "BP shape a");
  positive_or_throw(b, "BP shape b");
  if (x < beta || std::isinf(x)) return 0.0;
  if (x == beta) return a < 1.0 ? kInf : (a == 1.0 ? b * k / beta : 0.0);
  const double log_u = k * std::log(beta / x);
  return std::exp(std::log(k) - std::log(x) + b * log_u + (a - 1.0) * log1m_exp(log_u) -
                  special::log_beta(a, b));
}

double submodel_cdf(ModelKind kind, double x, const KwPParams& p) {
  switch (kind) {
    case ModelKind::Pareto: return pareto_cdf(x, p.beta, p.k);
    case ModelKind::EP: return ep_cdf(x, p.beta, p.k, p.a);
    case ModelKind::BP: return bp_cdf(x, p.beta, p.k, p.a, p.b);
    case ModelKind::KwP: return kwp_cdf(x, p);
  }
  return 0.0;
}

double submodel_pdf(ModelKind kind, double x, const KwPParams& p) {
  switch (kind) {
    case ModelKind::Pareto: return pareto_pdf(x, p.beta, p.k);
    case ModelKind::EP: return ep_pdf(x, p.beta, p.k, p.a);
    case ModelKind::BP: return bp_pdf(x, p.beta, p.k, p.a, p.b);
    case ModelKind::KwP: return kwp_pdf(x, p);
  }
  return 0.0;
}

}  // namespace kwp
