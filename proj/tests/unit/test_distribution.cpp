#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "kwp/distribution.hpp"
#include "kwp/errors.hpp"
#include "kwp/quadrature.hpp"
#include "kwp/random.hpp"
#include "kwp/special_functions.hpp"

using namespace kwp;

namespace {
const KwPParams kP{1.5, 1.5, 2.0, 3.0};
}

TEST(KwP, ReferenceValues) {
  // mpmath at 40 digits from the closed forms.
  EXPECT_NEAR(kwp_cdf(2.7, kP), 0.71678771912893456619, 1e-15);
  EXPECT_NEAR(kwp_pdf(2.7, kP), 0.34877452796956569791, 1e-15);
  EXPECT_NEAR(kwp_sf(1e6, kP) / 4.9602167154671852515e-26, 1.0, 1e-12);
  EXPECT_NEAR(std::exp(kwp_log_pdf(2.7, kP)), kwp_pdf(2.7, kP), 1e-15);
  EXPECT_NEAR(kwp_hazard(2.7, kP), kwp_pdf(2.7, kP) / kwp_sf(2.7, kP), 1e-13);
}

TEST(KwP, BelowSupport) {
  EXPECT_EQ(kwp_cdf(1.0, kP), 0.0);
  EXPECT_EQ(kwp_sf(1.0, kP), 1.0);
  EXPECT_EQ(kwp_pdf(1.0, kP), 0.0);
  EXPECT_EQ(kwp_hazard(1.0, kP), 0.0);
  EXPECT_EQ(kwp_log_pdf(1.0, kP), -std::numeric_limits<double>::infinity());
}

TEST(KwP, BoundaryLimits) {
  const KwPParams lt{1.0, 2.0, 0.5, 3.0}, eq{1.0, 2.0, 1.0, 3.0}, gt{1.0, 2.0, 1.5, 3.0};
  EXPECT_TRUE(std::isinf(kwp_pdf_limit_at_beta(lt)));
  EXPECT_DOUBLE_EQ(kwp_pdf_limit_at_beta(eq), 6.0);
  EXPECT_EQ(kwp_pdf_limit_at_beta(gt), 0.0);
  EXPECT_DOUBLE_EQ(kwp_hazard_limit_at_beta(eq), 6.0);
  EXPECT_NEAR(kwp_pdf(1.0 + 1e-9, eq), 6.0, 1e-6);
  EXPECT_LT(kwp_pdf(1.0 + 1e-9, gt), 1e-3);
  EXPECT_GT(kwp_pdf(1.0 + 1e-12, lt), 1e5);
  EXPECT_EQ(kwp_pdf(1.0, gt), 0.0);
}

TEST(KwP, QuantileRoundTrip) {
  for (double u : {1e-12, 1e-6, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0 - 1e-9}) {
    EXPECT_NEAR(kwp_cdf(kwp_quantile(u, kP), kP), u, 1e-10 * std::max(u, 1e-3)) << u;
  }
  for (double q : {1e-300, 1e-30, 1e-8, 0.3}) {
    EXPECT_NEAR(kwp_sf(kwp_quantile_upper(q, kP), kP) / q, 1.0, 1e-10) << q;
  }
  EXPECT_EQ(kwp_quantile(0.0, kP), kP.beta);
  EXPECT_THROW(kwp_quantile(1.0, kP), DomainError);
  EXPECT_THROW(kwp_quantile(-0.1, kP), DomainError);
}

TEST(KwP, NormalizesOverQuantileScale) {
  // Substitute x = beta t^(-1/k), |dx/dt| = x/(k t), to map the support
  // onto (0, 1) without using the quantile.
  for (const KwPParams& p : {kP, KwPParams{1.0, 0.7, 0.7, 2.5}, KwPParams{2.0, 3.0, 5.0, 0.4}}) {
    auto r = integrate_unit_interval([&](double t, double) {
      const double x = p.beta * std::pow(t, -1.0 / p.k);
      return std::isfinite(x) && x > p.beta ? kwp_pdf(x, p) * x / (p.k * t) : 0.0;
    });
    EXPECT_NEAR(r.value, 1.0, 1e-8);
  }
}

TEST(KwP, SubModelReductions) {
  for (double x : {1.01, 1.5, 3.0, 40.0}) {
    const KwPParams pareto{1.0, 2.2, 1.0, 1.0};
    EXPECT_NEAR(kwp_cdf(x, pareto), pareto_cdf(x, 1.0, 2.2), 1e-12);
    EXPECT_NEAR(kwp_pdf(x, pareto), pareto_pdf(x, 1.0, 2.2), 1e-12);
    EXPECT_NEAR(kwp_hazard(x, pareto), 2.2 / x, 1e-12);
    const KwPParams ep{1.0, 2.2, 3.3, 1.0};
    EXPECT_NEAR(kwp_cdf(x, ep), ep_cdf(x, 1.0, 2.2, 3.3), 1e-12);
    EXPECT_NEAR(kwp_pdf(x, ep), ep_pdf(x, 1.0, 2.2, 3.3), 1e-12);
    EXPECT_NEAR(submodel_cdf(ModelKind::EP, x, ep), ep_cdf(x, 1.0, 2.2, 3.3), 1e-15);
  }
}

TEST(BetaPareto, CdfIsIncompleteBetaOfBaseline) {
  const double x = 2.5;
  const double G = pareto_cdf(x, 1.0, 0.8);
  EXPECT_NEAR(bp_cdf(x, 1.0, 0.8, 2.0, 3.0), special::regularized_incomplete_beta(2.0, 3.0, G), 1e-14);
  // a = b = 1 is the baseline.
  EXPECT_NEAR(bp_pdf(x, 1.0, 0.8, 1.0, 1.0), pareto_pdf(x, 1.0, 0.8), 1e-14);
  // Density integrates to the cdf difference.
  auto r = integrate_unit_interval([](double v, double) {
    const double y = 2.0 + 3.0 * v;
    return 3.0 * bp_pdf(y, 1.0, 0.8, 2.0, 3.0);
  });
  EXPECT_NEAR(r.value, bp_cdf(5.0, 1.0, 0.8, 2.0, 3.0) - bp_cdf(2.0, 1.0, 0.8, 2.0, 3.0), 1e-12);
}

TEST(KwP, InvalidParameters) {
  EXPECT_THROW(kwp_cdf(2.0, KwPParams{1.0, -1.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(kwp_pdf(2.0, KwPParams{0.0, 1.0, 1.0, 1.0}), DomainError);
  EXPECT_THROW(kwp_sample(0, kP, 1), DomainError);
}

TEST(Sampling, DeterministicAndAboveBeta) {
  const Sample a = kwp_sample(1000, kP, 99), b = kwp_sample(1000, kP, 99);
  EXPECT_EQ(a.values(), b.values());
  for (double x : a.values()) EXPECT_GE(x, kP.beta);
  Xoshiro256 g(3);
  EXPECT_TRUE(kwp_draw(0, kP, g).empty());
}

TEST(Sampling, ChiSquareAgainstCdf) {
  // 10^5 draws in 30 equiprobable bins; chi-square critical value at
  // alpha = 0.01 with 29 degrees of freedom is 49.588.
  const KwPParams p{1.5, 1.5, 1.5, 3.5};
  const Sample s = kwp_sample(100000, p, 2024);
  std::vector<int> counts(30, 0);
  for (double x : s.values()) {
    int bin = static_cast<int>(kwp_cdf(x, p) * 30.0);
    counts[std::min(bin, 29)]++;
  }
  double chi2 = 0.0;
  const double expected = 100000.0 / 30.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 49.588);
}

TEST(Sampling, KolmogorovDistanceWithinBand) {
  const std::size_t n = 100000;
  const Sample s = kwp_sample(n, kP, 77);
  double d = 0.0;
  const auto& x = s.sorted();
  for (std::size_t i = 0; i < n; ++i) {
    const double f = kwp_cdf(x[i], kP);
    d = std::max({d, (i + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  EXPECT_LT(d, 1.95 / std::sqrt(static_cast<double>(n)));
}

TEST(Sampling, ParetoCaseMeanWithinThreeStandardErrors) {
  // a = b = 1, k = 2, beta = 1: E X = k beta/(k - 1) = 2.
  const Sample s = kwp_sample(1000000, KwPParams{1.0, 2.0, 1.0, 1.0}, 13);
  double sum = 0.0, sq = 0.0;
  for (double v : s.values()) sum += v;
  const double n = static_cast<double>(s.size()), mean = sum / n;
  for (double v : s.values()) sq += (v - mean) * (v - mean);
  const double se = std::sqrt(sq / (n - 1.0) / n);
  EXPECT_LT(std::fabs(mean - 2.0), 3.0 * se) << "mean " << mean << " se " << se;
}
