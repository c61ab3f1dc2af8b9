#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kwp/params.hpp"
#include "kwp/series.hpp"

namespace kwp {

/// Weights w_j of the Pareto-mixture representation
/// f(x) = sum_j w_j g(x; beta, k(j+1)).
///
/// The displayed double sum is a power series in u = (beta/x)^k only when b
/// is an integer; then the inner sum is finite.  For non-integer b the inner
/// sum diverges once j >= b - 1, the sequence is cut at the first such j and
/// converged is false.
struct ExpansionWeights {
  std::vector<double> w;
  SeriesControl control;
  bool converged = false;
  std::string warning;
};

ExpansionWeights weights(const KwPParams& p, const SeriesControl& ctrl = {});

/// eta_i = (-1)^i C(b, i), i = 0..count-1, of 1 - F = sum_i eta_i H(x; ia)
/// with H the EP cdf.  Finite (b + 1 non-zero terms) for integer b.
std::vector<double> cdf_expansion_coefficients(const KwPParams& p, std::size_t count);

/// Coefficients c^{(r)} of f_{i:n}(x) = sum_r c^{(r)} g(x; beta, k(r+1)).
/// Same validity remark as ExpansionWeights: the inner m-sum is finite for
/// integer b(n + l + 1 - i) - 1 and diverges for large r otherwise.
struct OrderStatCoeffs {
  std::size_t i = 1;
  std::size_t n = 1;
  std::vector<double> c;
  SeriesControl control;
  bool converged = false;
  std::string warning;
};

OrderStatCoeffs order_stat_coeffs(std::size_t i, std::size_t n, const KwPParams& p,
                                  const SeriesControl& ctrl = {});

enum class EvalMethod { Series, Quadrature };

/// A property value and the route that produced it.  Series is tried
/// first; when it is inapplicable or fails to converge under the control
/// the value comes from tanh-sinh quadrature of the exact quantile,
/// E phi(X) = int_0^1 phi(Q(v)) dv.
struct Evaluation {
  double value = 0.0;
  EvalMethod method = EvalMethod::Series;
  std::size_t terms = 0;
};

const char* to_string(EvalMethod m) noexcept;

// Raw moments E X^r, r < bk.
SeriesResult moment_series(int r, const KwPParams& p, const SeriesControl& ctrl = {});
double moment_quadrature(int r, const KwPParams& p);
Evaluation moment(int r, const KwPParams& p, const SeriesControl& ctrl = {});

// Incomplete moments M_r(z) = int_beta^z x^r f(x) dx, z >= beta.
SeriesResult incomplete_moment_series(int r, double z, const KwPParams& p, const SeriesControl& ctrl = {});
double incomplete_moment_quadrature(int r, double z, const KwPParams& p);
Evaluation incomplete_moment(int r, double z, const KwPParams& p, const SeriesControl& ctrl = {});

// Moment generating function for t < 0.
SeriesResult mgf_series(double t, const KwPParams& p, const SeriesControl& ctrl = {});
double mgf_quadrature(double t, const KwPParams& p);
Evaluation mgf(double t, const KwPParams& p, const SeriesControl& ctrl = {});

/// Quartile-based skewness [Q(3/4) - 2Q(1/2) + Q(1/4)] / [Q(3/4) - Q(1/4)].
double bowley_skewness(const KwPParams& p);

/// Octile-based kurtosis [Q(7/8) - Q(5/8) - Q(3/8) + Q(1/8)] / [Q(6/8) - Q(2/8)].
double moors_kurtosis(const KwPParams& p);

// Raw moments of the i-th order statistic of n, s < bk(n - i + 1).
SeriesResult order_stat_moment_series(int s, std::size_t i, std::size_t n, const KwPParams& p,
                                      const SeriesControl& ctrl = {});
double order_stat_moment_quadrature(int s, std::size_t i, std::size_t n, const KwPParams& p);
Evaluation order_stat_moment(int s, std::size_t i, std::size_t n, const KwPParams& p,
                             const SeriesControl& ctrl = {});

/// lambda_1..lambda_{m_max} from expected order statistics; needs bk > 1.
std::vector<double> l_moments(int m_max, const KwPParams& p, const SeriesControl& ctrl = {});

struct MeanDeviations {
  double about_mean = 0.0;    // D(mu) = 2 mu F(mu) - 2 M_1(mu)
  double about_median = 0.0;  // D(m) = mu - 2 M_1(m), m = Q(1/2)
  double mean = 0.0;
  double median = 0.0;
};

MeanDeviations mean_deviations(const KwPParams& p, const SeriesControl& ctrl = {});

// Renyi entropy (1 - delta)^{-1} log int f^delta, delta > 0, delta != 1.
SeriesResult renyi_entropy_series(double delta, const KwPParams& p, const SeriesControl& ctrl = {});
double renyi_entropy_quadrature(double delta, const KwPParams& p);
Evaluation renyi_entropy(double delta, const KwPParams& p, const SeriesControl& ctrl = {});

}  // namespace kwp
