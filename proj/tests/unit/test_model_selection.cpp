#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "kwp/datasets.hpp"
#include "kwp/descriptive.hpp"
#include "kwp/distribution.hpp"
#include "kwp/errors.hpp"
#include "kwp/model_selection.hpp"

using namespace kwp;

TEST(InformationCriteria, Formulas) {
  const auto ic = information_criteria(-100.0, 3, 50);
  EXPECT_DOUBLE_EQ(ic.aic, 206.0);
  EXPECT_NEAR(ic.bic, 200.0 + 3.0 * std::log(50.0), 1e-12);
  EXPECT_NEAR(ic.caic, 206.0 + 24.0 / 46.0, 1e-12);
  EXPECT_THROW(information_criteria(-1.0, 3, 4), DomainError);
}

TEST(KolmogorovSmirnov, UniformAndTies) {
  const Sample s({0.1, 0.2, 0.3, 0.4});
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  // Steps at i/4 vs x: largest gap is 1/4 - 0.1 ... = 0.6 above 0.4.
  EXPECT_NEAR(ks_statistic(s, uniform), 0.6, 1e-15);
  const Sample t({0.5, 0.5, 0.5, 0.5});
  EXPECT_NEAR(ks_statistic(t, uniform), 0.5, 1e-15);
}

TEST(KolmogorovSmirnov, BruteForceOnGrid) {
  const KwPParams p{1.0, 1.3, 2.0, 1.5};
  const Sample s = kwp_sample(200, p, 4);
  auto F = [&](double x) { return kwp_cdf(x, p); };
  const auto& x = s.sorted();
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::fabs((i + 1.0) / x.size() - F(x[i])));
    d = std::max(d, std::fabs(F(x[i]) - static_cast<double>(i) / x.size()));
  }
  EXPECT_NEAR(ks_statistic(s, F), d, 1e-15);
}

TEST(Compare, WheatonOrdering) {
  const Sample s(datasets::wheaton());
  const auto r = compare(s, {ModelKind::Pareto, ModelKind::EP, ModelKind::BP, ModelKind::KwP}, {}, "wheaton");
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].kind, ModelKind::KwP);
  EXPECT_EQ(r.rows[1].kind, ModelKind::BP);
  EXPECT_EQ(r.rows[2].kind, ModelKind::EP);
  EXPECT_EQ(r.rows[3].kind, ModelKind::Pareto);
  for (std::size_t i = 1; i < 4; ++i) EXPECT_LT(r.rows[i - 1].fit->ks, r.rows[i].fit->ks);
}

TEST(Compare, SingleModel) {
  const auto r = compare(Sample(datasets::wheaton()), {ModelKind::Pareto});
  ASSERT_EQ(r.rows.size(), 1u);
  ASSERT_TRUE(r.rows[0].fit.has_value());
  EXPECT_NEAR(r.rows[0].fit->params.k, 0.2438, 0.002);
}

TEST(Compare, FailureIsRecordedNotThrown) {
  const auto r = compare(Sample({1.0, 2.0, 3.0, 4.0}), {ModelKind::Pareto, ModelKind::KwP});
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_TRUE(r.rows[0].fit.has_value());
  EXPECT_FALSE(r.rows[1].fit.has_value());
  EXPECT_FALSE(r.rows[1].error.empty());
}

TEST(Descriptive, Wheaton) {
  const auto& w = datasets::wheaton();
  ASSERT_EQ(w.size(), 72u);
  const std::vector<double> first_row{1.7, 2.2, 14.4, 1.1, 0.4, 20.6, 5.3, 0.7, 1.9, 13.0, 12.0, 9.3};
  EXPECT_TRUE(std::equal(first_row.begin(), first_row.end(), w.begin()));
  // Checksum of the printed values in tenths.
  long tenths = 0;
  for (double v : w) tenths += std::lround(v * 10.0);
  EXPECT_EQ(tenths, 8787);
  const auto d = describe(w);
  EXPECT_DOUBLE_EQ(d.min, 0.1);
  EXPECT_DOUBLE_EQ(d.max, 64.0);
  EXPECT_NEAR(d.q1, 2.125, 1e-12);
  EXPECT_NEAR(d.median, 9.5, 1e-12);
  EXPECT_NEAR(d.q3, 20.125, 1e-12);
  EXPECT_NEAR(d.variance, 151.221, 0.01);
  EXPECT_NEAR(d.mean, 878.7 / 72.0, 1e-12);
}

TEST(Descriptive, SingleValueAndEmpty) {
  const auto d = describe({3.5});
  EXPECT_EQ(d.min, 3.5);
  EXPECT_EQ(d.q1, 3.5);
  EXPECT_EQ(d.median, 3.5);
  EXPECT_EQ(d.q3, 3.5);
  EXPECT_EQ(d.variance, 0.0);
  EXPECT_THROW(describe({}), InputError);
}
