#include "kwp/properties.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "kwp/distribution.hpp"
#include "kwp/errors.hpp"
#include "kwp/quadrature.hpp"
#include "kwp/special_functions.hpp"

namespace kwp {

namespace {

using special::GeneralizedBinomial;

// Thrown by a series route whose representation does not apply at the given
// parameters; the Evaluation wrappers catch it and switch to quadrature.
class SeriesInapplicable : public DomainError {
 public:
  using DomainError::DomainError;
};

bool is_integer(double x) { return x == std::round(x) && std::fabs(x) < 1e7; }

double signed_exp(int sign, double log_abs) { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

// Produces c_0, c_1, ... of f_{i:n} = sum_r c_r g(x; beta, k(r+1)), where
//   c_r = P/(r+1) (-1)^r sum_l (-1)^l C(i-1,l) sum_m (-1)^m C(nu_l,m) C(a(m+1)-1, r),
//   nu_l = b(n+l+1-i) - 1,  P = n! ab / ((i-1)!(n-i)!).
// i = n = 1 gives the density weights w_j.
class MixtureStream {
 public:
  MixtureStream(std::size_t i, std::size_t n, const KwPParams& p, const SeriesControl& ctrl)
      : a_(p.a), ctrl_(ctrl) {
    log_pref_ = special::log_gamma(n + 1.0) - special::log_gamma(static_cast<double>(i)) -
                special::log_gamma(static_cast<double>(n - i + 1)) + std::log(p.a * p.b);
    GeneralizedBinomial outer(static_cast<double>(i - 1));
    for (std::size_t l = 0; l < i; ++l, outer.advance()) {
      const double nu = p.b * static_cast<double>(n + l + 1 - i) - 1.0;
      const int osign = (l % 2 == 0 ? 1 : -1) * outer.sign();
      if (is_integer(nu) && nu >= 0.0) {
        GeneralizedBinomial inner(nu);
        for (std::size_t m = 0; m <= static_cast<std::size_t>(nu); ++m, inner.advance()) {
          const int s = osign * (m % 2 == 0 ? 1 : -1) * inner.sign();
          finite_.push_back({s, outer.log_abs() + inner.log_abs(), GeneralizedBinomial(a_ * (m + 1.0) - 1.0)});
        }
      } else {
        open_.push_back({osign, outer.log_abs(), nu});
      }
    }
  }

  // Next coefficient, or nullopt once an inner sum fails to converge.
  std::optional<double> next() {
    if (failed_) return std::nullopt;
    NeumaierSum total;
    for (auto& t : finite_) {
      total.add(signed_exp(t.sign * t.binom.sign(), t.log_abs + t.binom.log_abs()));
      t.binom.advance();
    }
    for (const auto& g : open_) {
      SeriesAccumulator acc(ctrl_);
      GeneralizedBinomial c(g.nu);
      for (std::size_t m = 0; !acc.done(); ++m, c.advance()) {
        const double e = special::binom_real(a_ * (m + 1.0) - 1.0, r_);
        const int s = g.sign * (m % 2 == 0 ? 1 : -1) * c.sign();
        acc.add(e * signed_exp(s, g.log_abs + c.log_abs()));
      }
      if (!acc.converged()) {
        failed_ = true;
        reason_ = "inner sum diverges at index " + std::to_string(r_) +
                  " (representation needs b(n+l+1-i)-1 to be a non-negative integer)";
        return std::nullopt;
      }
      total.add(acc.value());
    }
    const double sign = (r_ % 2 == 0) ? 1.0 : -1.0;
    const double c = sign * std::exp(log_pref_) / static_cast<double>(r_ + 1) * total.value();
    ++r_;
    return c;
  }

  std::size_t index() const noexcept { return r_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  struct FiniteTerm {
    int sign;
    double log_abs;
    GeneralizedBinomial binom;  // C(a(m+1)-1, r), advanced with r
  };
  struct OpenGroup {
    int sign;
    double log_abs;
    double nu;
  };

  double a_;
  SeriesControl ctrl_;
  double log_pref_ = 0.0;
  std::vector<FiniteTerm> finite_;
  std::vector<OpenGroup> open_;
  std::size_t r_ = 0;
  bool failed_ = false;
  std::string reason_;
};

// Sum over r of term(r, c_r) for the mixture coefficients of X_{i:n}.
SeriesResult mixture_series(std::size_t i, std::size_t n, const KwPParams& p, const SeriesControl& ctrl,
                            const std::function<double(std::size_t, double)>& term) {
  ctrl.validate();
  MixtureStream stream(i, n, p, ctrl);
  SeriesAccumulator acc(ctrl);
  while (!acc.done()) {
    const auto c = stream.next();
    if (!c) return {acc.value(), acc.terms(), false};
    acc.add(term(stream.index() - 1, *c));
  }
  return acc.result();
}

// Term of k beta^s sum_r (r+1) c_r / (k(r+1) - s) [1 - (beta/z)^{k(r+1)-s}];
// log_ratio = log(beta/z) (0 means z = inf, no bracket).  Callers check that
// the full moment exists, so a component without one over an infinite range
// has a coefficient that vanishes identically and is left out.
double moment_term(std::size_t r, double c, int s, double log_ratio, const KwPParams& p) {
  if (c == 0.0) return 0.0;
  const double e = p.k * (r + 1.0) - s;
  const double t = p.k * std::pow(p.beta, s) * (r + 1.0) * c;
  if (log_ratio < 0.0) return e == 0.0 ? -t * log_ratio : -t * std::expm1(e * log_ratio) / e;
  return e > 0.0 ? t / e : 0.0;
}

Evaluation evaluate(const std::function<SeriesResult()>& series, const std::function<double()>& quadrature) {
  try {
    const SeriesResult r = series();
    if (r.converged && std::isfinite(r.value)) return {r.value, EvalMethod::Series, r.terms};
  } catch (const SeriesInapplicable&) {
  }
  return {quadrature(), EvalMethod::Quadrature, 0};
}

double integrate_or_throw(const std::function<double(double, double)>& f, const char* what) {
  const QuadratureResult q = integrate_unit_interval(f);
  if (!q.converged || !std::isfinite(q.value)) {
    throw ConvergenceError(std::string(what) + ": quadrature did not converge");
  }
  return q.value;
}

double log1m_exp(double t) { return t > -0.693 ? std::log(-std::expm1(t)) : std::log1p(-std::exp(t)); }

// log f(Q(v)) assembled from v directly; forming Q(v) first would round
// x to beta for tiny v and lose the boundary behaviour of f.
double log_pdf_at_level(double v, double vc, const KwPParams& p) {
  const double log_s = (v < 0.5 ? std::log1p(-v) : std::log(vc)) / p.b;
  const double log_z = log1m_exp(log_s) / p.a;
  const double log_u = log1m_exp(log_z);
  const double log_x = std::log(p.beta) - log_u / p.k;
  return std::log(p.a * p.b * p.k) - log_x + log_u + (p.a - 1.0) * log_z + (p.b - 1.0) * log_s;
}

// Quantile at v with 1 - v supplied separately.
double quantile_at(double v, double vc, const KwPParams& p) {
  return v < 0.5 ? kwp_quantile(v, p) : kwp_quantile_upper(vc, p);
}

void require_moment(double order, double tail_index, const char* what) {
  if (!(order < tail_index)) {
    std::ostringstream os;
    os << what << " of order " << order << " does not exist (requires order < " << tail_index << ")";
    throw MomentDoesNotExist(os.str());
  }
}

void check_order_stat(std::size_t i, std::size_t n) {
  if (n == 0 || i == 0 || i > n) throw DomainError("order statistic rank must satisfy 1 <= i <= n");
}

}  // namespace

const char* to_string(EvalMethod m) noexcept { return m == EvalMethod::Series ? "series" : "quadrature"; }

ExpansionWeights weights(const KwPParams& p, const SeriesControl& ctrl) {
  p.validate();
  ctrl.validate();
  ExpansionWeights out;
  out.control = ctrl;
  MixtureStream stream(1, 1, p, ctrl);
  SeriesAccumulator acc(ctrl);
  while (!acc.done()) {
    const auto w = stream.next();
    if (!w) {
      out.warning = stream.reason();
      return out;
    }
    out.w.push_back(*w);
    acc.add(*w);
  }
  out.converged = acc.converged();
  if (!out.converged) out.warning = "weights truncated at max_terms before the series settled";
  return out;
}

std::vector<double> cdf_expansion_coefficients(const KwPParams& p, std::size_t count) {
  p.validate();
  std::vector<double> eta;
  eta.reserve(count);
  GeneralizedBinomial c(p.b);
  for (std::size_t i = 0; i < count; ++i, c.advance()) eta.push_back((i % 2 == 0 ? 1.0 : -1.0) * c.value());
  return eta;
}

OrderStatCoeffs order_stat_coeffs(std::size_t i, std::size_t n, const KwPParams& p, const SeriesControl& ctrl) {
  p.validate();
  ctrl.validate();
  check_order_stat(i, n);
  OrderStatCoeffs out;
  out.i = i;
  out.n = n;
  out.control = ctrl;
  MixtureStream stream(i, n, p, ctrl);
  SeriesAccumulator acc(ctrl);
  while (!acc.done()) {
    const auto c = stream.next();
    if (!c) {
      out.warning = stream.reason();
      return out;
    }
    out.c.push_back(*c);
    acc.add(*c);
  }
  out.converged = acc.converged();
  if (!out.converged) out.warning = "coefficients truncated at max_terms before the series settled";
  return out;
}

SeriesResult moment_series(int r, const KwPParams& p, const SeriesControl& ctrl) {
  p.validate();
  require_moment(r, p.b * p.k, "moment");
  return mixture_series(1, 1, p, ctrl, [&](std::size_t j, double w) { return moment_term(j, w, r, 0.0, p); });
}

double moment_quadrature(int r, const KwPParams& p) {
  p.validate();
  require_moment(r, p.b * p.k, "moment");
  return integrate_or_throw([&](double v, double vc) { return std::pow(quantile_at(v, vc, p), r); }, "moment");
}

Evaluation moment(int r, const KwPParams& p, const SeriesControl& ctrl) {
  p.validate();
  require_moment(r, p.b * p.k, "moment");
  return evaluate([&] { return moment_series(r, p, ctrl); }, [&] { return moment_quadrature(r, p); });
}

namespace {

void check_incomplete(int r, double z, const KwPParams& p) {
  p.validate();
  if (r < 0) throw DomainError("incomplete_moment: order must be non-negative");
  if (!(z >= p.beta)) throw DomainError("incomplete_moment: upper limit must be >= beta");
  require_moment(r, p.b * p.k, "incomplete moment");
}

}  // namespace

SeriesResult incomplete_moment_series(int r, double z, const KwPParams& p, const SeriesControl& ctrl) {
  check_incomplete(r, z, p);
  if (z == p.beta) return {0.0, 0, true};
  const double log_ratio = std::isinf(z) ? 0.0 : std::log(p.beta / z);
  return mixture_series(1, 1, p, ctrl,
                        [&](std::size_t j, double w) { return moment_term(j, w, r, log_ratio, p); });
}

double incomplete_moment_quadrature(int r, double z, const KwPParams& p) {
  check_incomplete(r, z, p);
  if (z == p.beta) return 0.0;
  const double F = kwp_cdf(z, p);
  const double S = kwp_sf(z, p);
  return integrate_or_throw(
      [&](double w, double wc) { return F * std::pow(quantile_at(F * w, S + F * wc, p), r); },
      "incomplete moment");
}

Evaluation incomplete_moment(int r, double z, const KwPParams& p, const SeriesControl& ctrl) {
  check_incomplete(r, z, p);
  return evaluate([&] { return incomplete_moment_series(r, z, p, ctrl); },
                  [&] { return incomplete_moment_quadrature(r, z, p); });
}

namespace {

void check_mgf(double t, const KwPParams& p) {
  p.validate();
  if (!(t < 0.0) || !std::isfinite(t)) throw DomainError("mgf: defined here only for finite t < 0");
}

}  // namespace

SeriesResult mgf_series(double t, const KwPParams& p, const SeriesControl& ctrl) {
  check_mgf(t, p);
  const double x = -p.beta * t;
  const double ex = std::exp(-x);
  // k(j+1) x^{k(j+1)} Gamma(-k(j+1), x) = k(j+1) e^{-x} G(-k(j+1), x) with G
  // the scaled incomplete gamma, which stays O(1) for large k(j+1).
  return mixture_series(1, 1, p, ctrl, [&](std::size_t j, double w) {
    if (w == 0.0) return 0.0;
    const double s = p.k * (j + 1.0);
    return s * w * ex * special::scaled_upper_incomplete_gamma(-s, x);
  });
}

double mgf_quadrature(double t, const KwPParams& p) {
  check_mgf(t, p);
  return integrate_or_throw([&](double v, double vc) { return std::exp(t * quantile_at(v, vc, p)); }, "mgf");
}

Evaluation mgf(double t, const KwPParams& p, const SeriesControl& ctrl) {
  check_mgf(t, p);
  return evaluate([&] { return mgf_series(t, p, ctrl); }, [&] { return mgf_quadrature(t, p); });
}

double bowley_skewness(const KwPParams& p) {
  const double q1 = kwp_quantile(0.25, p);
  const double q2 = kwp_quantile(0.5, p);
  const double q3 = kwp_quantile(0.75, p);
  return (q3 - 2.0 * q2 + q1) / (q3 - q1);
}

double moors_kurtosis(const KwPParams& p) {
  const auto q = [&](double u) { return kwp_quantile(u, p); };
  return (q(0.875) - q(0.625) - q(0.375) + q(0.125)) / (q(0.75) - q(0.25));
}

namespace {

void check_order_moment(int s, std::size_t i, std::size_t n, const KwPParams& p) {
  p.validate();
  check_order_stat(i, n);
  if (s < 1) throw DomainError("order_stat_moment: order must be positive");
  require_moment(s, p.b * p.k * static_cast<double>(n - i + 1), "order-statistic moment");
}

}  // namespace

SeriesResult order_stat_moment_series(int s, std::size_t i, std::size_t n, const KwPParams& p,
                                      const SeriesControl& ctrl) {
  check_order_moment(s, i, n, p);
  return mixture_series(i, n, p, ctrl, [&](std::size_t r, double c) { return moment_term(r, c, s, 0.0, p); });
}

double order_stat_moment_quadrature(int s, std::size_t i, std::size_t n, const KwPParams& p) {
  check_order_moment(s, i, n, p);
  const double log_pref = special::log_gamma(n + 1.0) - special::log_gamma(static_cast<double>(i)) -
                          special::log_gamma(static_cast<double>(n - i + 1));
  const double lo = static_cast<double>(i - 1);
  const double hi = static_cast<double>(n - i);
  return integrate_or_throw(
      [&](double v, double vc) {
        return std::exp(log_pref + lo * std::log(v) + hi * std::log(vc) + s * std::log(quantile_at(v, vc, p)));
      },
      "order-statistic moment");
}

Evaluation order_stat_moment(int s, std::size_t i, std::size_t n, const KwPParams& p, const SeriesControl& ctrl) {
  check_order_moment(s, i, n, p);
  return evaluate([&] { return order_stat_moment_series(s, i, n, p, ctrl); },
                  [&] { return order_stat_moment_quadrature(s, i, n, p); });
}

std::vector<double> l_moments(int m_max, const KwPParams& p, const SeriesControl& ctrl) {
  p.validate();
  if (m_max < 1) throw DomainError("l_moments: need at least one L-moment");
  require_moment(1.0, p.b * p.k, "mean");
  std::vector<double> lambda;
  for (int m = 0; m < m_max; ++m) {
    NeumaierSum sum;
    GeneralizedBinomial c(m);
    for (int q = 0; q <= m; ++q, c.advance()) {
      const double e = order_stat_moment(1, m + 1 - q, m + 1, p, ctrl).value;
      sum.add((q % 2 == 0 ? 1.0 : -1.0) * c.value() * e);
    }
    lambda.push_back(sum.value() / (m + 1.0));
  }
  return lambda;
}

MeanDeviations mean_deviations(const KwPParams& p, const SeriesControl& ctrl) {
  p.validate();
  require_moment(1.0, p.b * p.k, "mean");
  MeanDeviations d;
  d.mean = moment(1, p, ctrl).value;
  d.median = kwp_quantile(0.5, p);
  d.about_mean = 2.0 * d.mean * kwp_cdf(d.mean, p) - 2.0 * incomplete_moment(1, d.mean, p, ctrl).value;
  d.about_median = d.mean - 2.0 * incomplete_moment(1, d.median, p, ctrl).value;
  return d;
}

namespace {

void check_renyi(double delta, const KwPParams& p) {
  p.validate();
  if (!(delta > 0.0) || delta == 1.0 || !std::isfinite(delta)) {
    throw DomainError("renyi_entropy: delta must be positive and different from 1");
  }
  if (!(delta * (p.k + 1.0) > 1.0)) {
    throw DomainError("renyi_entropy: requires delta(k+1) > 1 (second beta argument must be positive)");
  }
  if (!(delta * (p.a - 1.0) + 1.0 > 0.0)) {
    throw DomainError("renyi_entropy: requires a delta - delta + 1 > 0 (first beta argument must be positive)");
  }
  if (!(delta * (p.k * p.b + 1.0) > 1.0)) {
    throw DomainError("renyi_entropy: requires delta(kb+1) > 1 (integral of f^delta diverges in the tail)");
  }
}

}  // namespace

SeriesResult renyi_entropy_series(double delta, const KwPParams& p, const SeriesControl& ctrl) {
  check_renyi(delta, p);
  ctrl.validate();
  const double second = (delta * (p.k + 1.0) - 1.0) / p.k;
  SeriesAccumulator acc(ctrl);
  GeneralizedBinomial c(delta * (p.b - 1.0));
  for (std::size_t j = 0; !acc.done(); ++j, c.advance()) {
    if (c.is_zero()) {
      acc.add(0.0);
      continue;
    }
    const double first = p.a * (delta + j) - delta + 1.0;
    const int sign = (j % 2 == 0 ? 1 : -1) * c.sign();
    acc.add(signed_exp(sign, c.log_abs() + special::log_beta(first, second)));
  }
  const double sum = acc.value();
  if (!(sum > 0.0)) throw SeriesInapplicable("renyi_entropy: truncated series is not positive");
  const double value = delta * std::log(p.a * p.b) / (1.0 - delta) - std::log(p.k) + std::log(p.beta) +
                       std::log(sum) / (1.0 - delta);
  return {value, acc.terms(), acc.converged()};
}

double renyi_entropy_quadrature(double delta, const KwPParams& p) {
  check_renyi(delta, p);
  // int f^delta dx = E[f(X)^{delta-1}].
  const double integral = integrate_or_throw(
      [&](double v, double vc) { return std::exp((delta - 1.0) * log_pdf_at_level(v, vc, p)); },
      "renyi entropy");
  return std::log(integral) / (1.0 - delta);
}

Evaluation renyi_entropy(double delta, const KwPParams& p, const SeriesControl& ctrl) {
  check_renyi(delta, p);
  return evaluate([&] { return renyi_entropy_series(delta, p, ctrl); },
                  [&] { return renyi_entropy_quadrature(delta, p); });
}

}  // namespace kwp
